//! Enumerations of small segregated modules and valid parameter arrays,
//! shared by tests and benchmarks.

use crate::bdcore::{classical_sequence, quantum_sequence, ParameterArray};
use crate::exactlinalg::rational::Rational;
use crate::repmod::{ModuleSpec, Summand};

/// Every nonempty multiset of degrees of one parity whose modules have
/// total dimension at most `max_dim`, as summand lists with the largest
/// degree first.
pub fn segregated_summands(max_dim: usize) -> Vec<Vec<Summand>> {
    let mut out = Vec::new();
    for parity in 0..2 {
        let degrees: Vec<usize> = (parity..max_dim).step_by(2).rev().collect();
        let mut current = Vec::new();
        collect(&degrees, max_dim, &mut current, &mut out);
    }
    out
}

fn collect(
    degrees: &[usize],
    budget: usize,
    current: &mut Vec<Summand>,
    out: &mut Vec<Vec<Summand>>,
) {
    let Some((&d, rest)) = degrees.split_first() else {
        if !current.is_empty() {
            out.push(current.clone());
        }
        return;
    };
    collect(rest, budget, current, out);
    let mut m = 1;
    while m * (d + 1) <= budget {
        current.push(Summand::new(d, m));
        collect(rest, budget - m * (d + 1), current, out);
        current.pop();
        m += 1;
    }
}

pub fn sl2_specs(max_dim: usize) -> Vec<ModuleSpec> {
    segregated_summands(max_dim)
        .into_iter()
        .map(|s| ModuleSpec::sl2(s).expect("valid summands"))
        .collect()
}

pub fn uq_specs(q: &Rational, max_dim: usize) -> Vec<ModuleSpec> {
    segregated_summands(max_dim)
        .into_iter()
        .map(|s| ModuleSpec::uq(q.clone(), s).expect("valid summands"))
        .collect()
}

/// The parameter array with all three sequences `{2i - d}` (`q = None`)
/// or `{q^(d-2i)}`.
pub fn reduced_array(shape: &[i64], q: Option<&Rational>) -> ParameterArray {
    let d = shape.len() - 1;
    let s = match q {
        None => classical_sequence(d),
        Some(q) => quantum_sequence(d, q),
    };
    ParameterArray::new(s.clone(), s.clone(), s, shape.to_vec()).expect("equal lengths")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        let all = segregated_summands(12);
        assert_eq!(all.len(), 98);
        for s in &all {
            let dim: usize = s.iter().map(|x| (x.degree + 1) * x.multiplicity).sum();
            assert!(dim <= 12);
            assert!(s.iter().all(|x| x.degree % 2 == s[0].degree % 2));
        }
        assert_eq!(segregated_summands(2).len(), 3);
    }
}

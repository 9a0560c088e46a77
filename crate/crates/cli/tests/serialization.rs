//! Every document survives a write/read cycle in both output styles.

use bdtriple_cli::document::{Document, ModuleSpecDoc, ParameterArrayDoc, SummandDoc, Q};
use bdtriple_core::Rational;
use num_bigint::BigInt;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Q> {
    (any::<i64>(), 1i64..1_000_000_000)
        .prop_map(|(n, d)| Q(Rational::new(BigInt::from(n), BigInt::from(d))))
}

fn matrix(n: usize) -> impl Strategy<Value = Vec<Vec<Q>>> {
    prop::collection::vec(prop::collection::vec(rational(), n), n)
}

fn document() -> impl Strategy<Value = Document> {
    let triple = (1usize..5).prop_flat_map(|n| {
        (matrix(n), matrix(n), matrix(n)).prop_map(|(a, b, c)| Document::Triple([a, b, c]))
    });
    let pair = (1usize..5)
        .prop_flat_map(|n| (matrix(n), matrix(n)).prop_map(|(a, b)| Document::Pair([a, b])));
    let array = (0usize..5).prop_flat_map(|d| {
        (
            prop::collection::vec(rational(), d + 1),
            prop::collection::vec(rational(), d + 1),
            prop::collection::vec(rational(), d + 1),
            prop::collection::vec(1i64..6, d + 1),
        )
            .prop_map(|(theta, theta_prime, theta_double, shape)| {
                Document::ParameterArray(ParameterArrayDoc {
                    theta,
                    theta_prime,
                    theta_double,
                    shape,
                })
            })
    });
    let summand =
        (0usize..8, prop::bool::ANY, 1usize..4).prop_map(|(degree, minus, multiplicity)| {
            SummandDoc {
                degree,
                epsilon: if minus { -1 } else { 1 },
                multiplicity,
            }
        });
    let spec = (
        prop::option::of(rational()),
        prop::collection::vec(summand, 1..4),
    )
        .prop_map(|(q, summands)| {
            Document::ModuleSpec(ModuleSpecDoc {
                algebra: if q.is_some() { "uq" } else { "sl2" }.to_string(),
                q,
                summands,
            })
        });
    prop_oneof![triple, pair, array, spec]
}

proptest! {
    #[test]
    fn pretty_and_compact_round_trip(doc in document()) {
        prop_assert_eq!(&Document::parse(&doc.to_pretty()).unwrap(), &doc);
        prop_assert_eq!(&Document::parse(&doc.to_compact()).unwrap(), &doc);
    }

    #[test]
    fn rationals_print_in_lowest_terms(n in any::<i64>(), d in 1i64..1000) {
        let q = Q(Rational::new(BigInt::from(n), BigInt::from(d)));
        let text = serde_json::to_string(&q).unwrap();
        let back: Q = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &q);
        prop_assert_eq!(text, format!("\"{}\"", q.0));
    }
}

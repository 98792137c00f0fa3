mod common;

use picod::decoder::{decode_client, decode_report, DecodingSemantics};
use picod::gf2::Gf2Basis;
use picod::{IndexCode, IndexSet, Origin, ProblemInstance};
use proptest::prelude::*;

fn arb_code() -> impl Strategy<Value = (usize, usize, Vec<Vec<usize>>)> {
    (3usize..=10).prop_flat_map(|p| {
        let sym = proptest::collection::btree_set(0..p, 1..=p)
            .prop_map(|s| s.into_iter().collect::<Vec<_>>());
        (Just(p), 1..p, proptest::collection::vec(sym, 0..=5))
    })
}

fn build(p: usize, k: usize, code: &[Vec<usize>]) -> IndexCode {
    let inst = ProblemInstance::new(p, k).unwrap();
    let sets = code.iter().map(|s| s.iter().copied().collect::<IndexSet>());
    IndexCode::from_supports(inst, sets, Origin::External).unwrap()
}

fn as_vec(s: IndexSet) -> Vec<usize> {
    s.to_vec()
}

proptest! {
    #[test]
    fn matches_reference_decoders((p, k, code) in arb_code()) {
        let c = build(p, k, &code);
        for i in 0..p {
            let ps = decode_client(&c, i, DecodingSemantics::PerSymbol).unwrap();
            let fp = decode_client(&c, i, DecodingSemantics::FixedPoint).unwrap();
            let lc = decode_client(&c, i, DecodingSemantics::LinearClosure).unwrap();
            prop_assert_eq!(as_vec(ps), common::per_symbol(p, k, &code, i).into_iter().collect::<Vec<_>>());
            prop_assert_eq!(as_vec(fp), common::fixed_point(p, k, &code, i).into_iter().collect::<Vec<_>>());
            prop_assert_eq!(as_vec(lc), common::linear_closure(p, k, &code, i).into_iter().collect::<Vec<_>>());
        }
    }

    #[test]
    fn semantics_are_nested((p, k, code) in arb_code()) {
        let c = build(p, k, &code);
        for i in 0..p {
            let ps = decode_client(&c, i, DecodingSemantics::PerSymbol).unwrap();
            let fp = decode_client(&c, i, DecodingSemantics::FixedPoint).unwrap();
            let lc = decode_client(&c, i, DecodingSemantics::LinearClosure).unwrap();
            prop_assert!(ps.is_subset(fp) && fp.is_subset(lc));
            prop_assert!((lc & c.instance().known(i)).is_empty());
        }
    }

    #[test]
    fn adding_a_symbol_never_shrinks((p, k, code) in arb_code(), extra in any::<u128>()) {
        let c = build(p, k, &code);
        let s = IndexSet::from_bits(extra) & IndexSet::full(p);
        prop_assume!(!s.is_empty());
        let mut bigger = code.clone();
        bigger.push(s.to_vec());
        let b = build(p, k, &bigger);
        for sem in DecodingSemantics::ALL {
            for i in 0..p {
                let before = decode_client(&c, i, sem).unwrap();
                prop_assert!(before.is_subset(decode_client(&b, i, sem).unwrap()));
            }
        }
    }

    #[test]
    fn linear_closure_depends_only_on_span((p, k, code) in arb_code()) {
        let c = build(p, k, &code);
        let basis = Gf2Basis::from_vectors(c.supports());
        prop_assume!(basis.rank() > 0);
        let other = IndexCode::from_supports(*c.instance(), basis.rows().iter().copied(), Origin::External).unwrap();
        let sem = DecodingSemantics::LinearClosure;
        prop_assert_eq!(decode_report(&c, sem), decode_report(&other, sem));
    }

    #[test]
    fn decoders_transpose_decoded((p, k, code) in arb_code()) {
        let r = decode_report(&build(p, k, &code), DecodingSemantics::FixedPoint);
        for i in 0..p {
            for m in 0..p {
                prop_assert_eq!(r.decoded(i).contains(m), r.decoders(m).contains(i));
            }
        }
        let by_msg: usize = r.decoder_sets().iter().map(|s| s.len()).sum();
        prop_assert_eq!(by_msg, r.total());
    }

    #[test]
    fn one_symbol_yields_at_most_one_message((p, k, code) in arb_code()) {
        let c = build(p, k, &code);
        for s in c.supports() {
            for i in 0..p {
                prop_assert!(picod::decoder::decode_known(&[s], c.instance().known(i), DecodingSemantics::FixedPoint).len() <= 1);
            }
        }
    }
}

#[test]
fn side_info_partitions_messages() {
    for p in 2..=12 {
        for k in 1..p {
            let inst = ProblemInstance::new(p, k).unwrap();
            let mut seen = std::collections::HashSet::new();
            for i in 0..p {
                let w = inst.side_info(i).unwrap();
                assert_eq!(w.members.len(), k);
                assert!((w.members & w.want_set()).is_empty());
                assert_eq!(w.members | w.want_set(), IndexSet::full(p));
                assert_eq!(
                    w.members,
                    common::known(p, k, i).into_iter().collect::<IndexSet>()
                );
                assert!(seen.insert(w.members), "pattern repeated at P={p} k={k}");
            }
        }
    }
}

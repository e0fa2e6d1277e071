use std::sync::OnceLock;

use proptest::prelude::*;

use rgroup::corpus::{generate, CorpusCase};
use rgroup::cyclotomic::CyclotomicField;
use rgroup::fixed_space::CoordinateModel;
use rgroup::rgroup::analyze;
use rgroup::signed_weyl::{Root, SignedPermutation};
use rgroup::twist_labels::TwistGroup;

fn signed_perm(rank: usize) -> impl Strategy<Value = SignedPermutation> {
    (Just((0..rank).collect::<Vec<_>>()).prop_shuffle(), 0u32..(1 << rank)).prop_map(move |(perm, mask)| {
        SignedPermutation::new(perm, (0..rank).filter(|i| mask >> i & 1 == 1)).unwrap()
    })
}

fn triple(max_rank: usize) -> impl Strategy<Value = (SignedPermutation, SignedPermutation, SignedPermutation)> {
    (1..=max_rank).prop_flat_map(|r| (signed_perm(r), signed_perm(r), signed_perm(r)))
}

fn root(rank: usize) -> impl Strategy<Value = Root> {
    (0..rank, 0..rank, 0..3u8).prop_filter_map("two distinct indices", |(i, j, k)| match k {
        0 => Some(Root::short(i)),
        _ if i >= j => None,
        1 => Some(Root::diff(i, j)),
        _ => Some(Root::sum(i, j)),
    })
}

fn corpus() -> &'static [CorpusCase] {
    static CORPUS: OnceLock<Vec<CorpusCase>> = OnceLock::new();
    CORPUS.get_or_init(|| generate(3))
}

proptest! {
    #[test]
    fn signed_permutations_form_a_group((a, b, c) in triple(6)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        let id = SignedPermutation::identity(a.rank());
        prop_assert_eq!(&a * &a.inverse(), id.clone());
        prop_assert_eq!(&a.inverse() * &a, id.clone());
        prop_assert_eq!(&a * &id, a.clone());
        prop_assert_eq!(a.compose(&b).unwrap(), &a * &b);
    }

    #[test]
    fn normal_form_splits((a, _, _) in triple(6)) {
        prop_assert_eq!(&a.permutation_part() * &a.sign_part(), a.clone());
        prop_assert!(a.sign_part().is_pure_sign_change());
        prop_assert_eq!(a.sign_count(), a.flips().len());
        let order = a.order();
        let mut p = SignedPermutation::identity(a.rank());
        for _ in 0..order {
            p = &p * &a;
        }
        prop_assert!(p.is_identity());
    }

    #[test]
    fn root_action_is_an_action((a, b, _) in triple(5), seed in any::<u64>()) {
        let r = a.rank();
        let roots: Vec<Root> = (0..r).map(Root::short)
            .chain((0..r).flat_map(|i| (i + 1..r).flat_map(move |j| [Root::diff(i, j), Root::sum(i, j)])))
            .collect();
        let alpha = roots[(seed % roots.len() as u64) as usize];
        prop_assert_eq!((&a * &b).act_on_root(&alpha), a.act_on_root(&b.act_on_root(&alpha)));
        prop_assert_eq!(a.act_on_root(&alpha.negated()), a.act_on_root(&alpha).negated());
        let refl = alpha.reflection(r);
        prop_assert_eq!(refl.act_on_root(&alpha), alpha.negated());
        prop_assert!((&refl * &refl).is_identity());
    }

    #[test]
    fn conjugate_reflection_is_reflection_of_image((a, _, _) in triple(5), alpha in root(5)) {
        prop_assume!(alpha.max_index() < a.rank());
        let r = a.rank();
        prop_assert_eq!(alpha.reflection(r).conjugate_by(&a), a.act_on_root(&alpha).reflection(r));
    }

    #[test]
    fn display_is_injective((a, b, _) in triple(5)) {
        prop_assert_eq!(a == b, a.to_string() == b.to_string());
    }

    #[test]
    fn root_strings_parse(alpha in root(6)) {
        prop_assert_eq!(alpha.to_string().parse::<Root>().unwrap(), alpha);
    }

    #[test]
    fn regularity_matches_closed_form((w, u, _) in triple(6), n in 1u32..4) {
        let model = CoordinateModel::new(vec![n; w.rank()]);
        prop_assert_eq!(model.is_regular(&w), CoordinateModel::is_regular_closed_form(&w));
        prop_assert_eq!(model.fixed_space_dim(&w), model.fixed_space_dim_by_cycles(&w));
        prop_assert_eq!(model.fixed_space_dim(&w), model.fixed_space_dim(&w.conjugate_by(&u)));
        match model.fixed_vector(&w) {
            Some(witness) => {
                prop_assert!(!model.is_regular(&w));
                prop_assert!(model.verify_fixed(&w, &witness.vector));
            }
            None => prop_assert!(model.is_regular(&w)),
        }
    }

    #[test]
    fn twist_groups_are_abelian_groups(o1 in 1u32..6, o2 in 1u32..5, x in any::<u32>(), y in any::<u32>(), z in any::<u32>()) {
        let g = TwistGroup::new(vec![("a".into(), o1), ("b".into(), o2)]).unwrap();
        let els: Vec<_> = g.elements().collect();
        let pick = |k: u32| els[k as usize % els.len()];
        let (x, y, z) = (pick(x), pick(y), pick(z));
        prop_assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
        prop_assert_eq!(g.mul(x, y), g.mul(y, x));
        prop_assert!(g.is_identity(g.mul(x, g.inv(x))));
        prop_assert_eq!(g.parse(&g.format(x)).unwrap(), x);
        prop_assert_eq!(g.pow(x, g.element_order(x) as i64), g.identity());
    }

    #[test]
    fn roots_of_unity_multiply(n in 1u32..13, a in 0u32..48, b in 0u32..48) {
        let f = CyclotomicField::new(n);
        let za = f.zeta_pow(a as i64);
        let zb = f.zeta_pow(b as i64);
        prop_assert_eq!(f.mul(&za, &zb), f.zeta_pow((a + b) as i64));
        let sum = (0..n).fold(f.zero(), |acc, k| f.add(&acc, &f.zeta_pow((k * a) as i64)));
        let expected = if a % n == 0 { f.from_int(n as i64) } else { f.zero() };
        prop_assert_eq!(sum, expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn corpus_data_satisfy_the_structure_identities(k in any::<prop::sample::Index>()) {
        let case = &corpus()[k.index(corpus().len())];
        let a = analyze(&case.datum).unwrap();
        prop_assert_eq!(a.w_sigma.len(), a.r_sigma.len() * a.w_prime.len(), "{}", case.name);
        prop_assert_eq!(a.r_sigma.len(), a.gamma.len() * a.r_pi_sigma.len(), "{}", case.name);
        prop_assert_eq!(a.w_sigma_hat.len(), a.x_pi.len() * a.chi_table.len(), "{}", case.name);
        let r: std::collections::BTreeSet<_> = a.r_sigma.iter().cloned().collect();
        for w in &a.w_prime {
            prop_assert!(w.is_identity() || !r.contains(w), "{}", case.name);
        }
        for e in &a.chi_table {
            prop_assert!(r.contains(&e.w_chi), "{}", case.name);
            prop_assert_eq!(e.w_chi.permutation_part(), e.s_chi.clone());
        }
        for w in &a.r_sigma {
            let u = &a.r_sigma[k.index(a.r_sigma.len())];
            prop_assert!(r.contains(&(w * u)));
        }
    }
}

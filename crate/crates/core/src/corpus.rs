//! Deterministic enumeration of small inducing data for the oracle suites.
//!
//! Each template fixes a twist group, a label set and the actions on it. For
//! every multiset of `r` labels (permuting the blocks gives a conjugate
//! datum), every `Ŵ(σ)` between `X(π)` and the realizable twists, and every
//! union of `W(σ)`-orbits of roots allowed by the `Δ'` rules, the datum is
//! built and kept if it validates.

use std::collections::BTreeSet;

use crate::datum::{
    format_set, parse_datum, realizable_twists_raw, InducingDatum, ParseOptions, WSigmaHatMode,
};
use crate::fixtures::{fixture_json, FIXTURE_NAMES};
use crate::rgroup::w_sigma_from;
use crate::signed_weyl::Root;
use crate::twist_labels::{LabelAlgebra, PiTuple, RepLabel, TauData, Twist, TwistGroup};

/// Above this many orbits only the empty set, the full set, singletons and
/// complements of singletons are tried.
const FULL_SUBSET_ORBITS: usize = 5;

#[derive(Debug, Clone)]
pub struct CorpusCase {
    pub name: String,
    pub datum: InducingDatum,
}

#[derive(Debug, Clone)]
pub struct Template {
    pub name: &'static str,
    pub algebra: LabelAlgebra,
    /// Generators of each `X(τ)` to try.
    pub x_tau_choices: Vec<Vec<Twist>>,
}

fn labels(specs: &[(&str, u32)]) -> Vec<RepLabel> {
    specs.iter().map(|&(id, size)| RepLabel { id: id.to_string(), block_size: size }).collect()
}

fn cyclic(order: u32) -> TwistGroup {
    TwistGroup::new(vec![("chi".to_string(), order)]).expect("valid group")
}

fn template(
    name: &'static str,
    group: TwistGroup,
    specs: &[(&str, u32)],
    chi: Option<Vec<usize>>,
    eps: Vec<usize>,
    x_tau_choices: Vec<Vec<Twist>>,
) -> Template {
    let actions = chi.into_iter().collect();
    let algebra = LabelAlgebra::new(group, labels(specs), actions, eps).expect("template is consistent");
    Template { name, algebra, x_tau_choices }
}

/// The label templates. `ε` is trivial on the twist group throughout.
pub fn templates() -> Vec<Template> {
    let z2 = cyclic(2);
    let z3 = cyclic(3);
    let z4 = cyclic(4);
    let (g2, g3, g4) = (z2.generator(0), z3.generator(0), z4.generator(0));
    vec![
        template("trivial", TwistGroup::trivial(), &[("a", 1), ("b", 1), ("b_dual", 1)], None, vec![0, 2, 1], vec![vec![]]),
        template(
            "z2",
            z2.clone(),
            &[("a", 1), ("b", 1), ("c", 1), ("d", 1), ("e", 1)],
            Some(vec![1, 0, 2, 4, 3]),
            vec![0, 1, 2, 4, 3],
            vec![vec![g2]],
        ),
        template(
            "z2-wide",
            z2,
            &[("A", 2), ("B", 2), ("c", 1), ("c_dual", 1)],
            Some(vec![1, 0, 2, 3]),
            vec![0, 1, 3, 2],
            vec![vec![g2]],
        ),
        template("z3", z3.clone(), &[("l0", 1), ("l1", 1), ("l2", 1), ("f", 1)], Some(vec![1, 2, 0, 3]), vec![0, 1, 2, 3], vec![vec![g3]]),
        template(
            "z3-paired",
            z3,
            &[("l0", 1), ("l1", 1), ("l2", 1), ("m0", 1), ("m1", 1), ("m2", 1)],
            Some(vec![1, 2, 0, 4, 5, 3]),
            vec![3, 4, 5, 0, 1, 2],
            vec![vec![g3]],
        ),
        template(
            "z4",
            z4.clone(),
            &[("l0", 1), ("l1", 1), ("l2", 1), ("l3", 1), ("u0", 1), ("u1", 1)],
            Some(vec![1, 2, 3, 0, 5, 4]),
            vec![0, 1, 2, 3, 4, 5],
            vec![vec![g4], vec![z4.pow(g4, 2)]],
        ),
    ]
}

/// Multisets of size `r` from `0..n`, as non-decreasing sequences.
fn multisets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(n: usize, r: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for l in start..n {
            cur.push(l);
            rec(n, r, l, cur, out);
            cur.pop();
        }
    }
    rec(n, r, 0, &mut cur, &mut out);
    out
}

fn all_roots(r: usize) -> Vec<Root> {
    let mut out = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            out.push(Root::diff(i, j));
            out.push(Root::sum(i, j));
        }
        out.push(Root::short(i));
    }
    out.sort();
    out
}

/// Roots allowed individually by the `Δ'` rules.
fn candidate_roots(algebra: &LabelAlgebra, pi: &PiTuple) -> Vec<Root> {
    use crate::signed_weyl::RootKind;
    let c = &pi.components;
    all_roots(pi.rank())
        .into_iter()
        .filter(|root| match root.kind {
            RootKind::Diff(i, j) => c[i] == c[j],
            RootKind::Sum(i, j) => c[j] == algebra.eps_label(c[i]),
            RootKind::Short(i) => algebra.eps_label(c[i]) == c[i],
        })
        .collect()
}

fn delta_choices(orbits: &[Vec<Root>]) -> Vec<Vec<Root>> {
    let k = orbits.len();
    let masks: Vec<u64> = if k <= FULL_SUBSET_ORBITS {
        (0..1u64 << k).collect()
    } else {
        let full = (1u64 << k) - 1;
        let mut m: BTreeSet<u64> = [0, full].into_iter().collect();
        for i in 0..k {
            m.insert(1 << i);
            m.insert(full ^ (1 << i));
        }
        m.into_iter().collect()
    };
    masks
        .into_iter()
        .map(|mask| {
            let mut roots: Vec<Root> =
                (0..k).filter(|i| mask >> i & 1 == 1).flat_map(|i| orbits[i].iter().copied()).collect();
            roots.sort();
            roots
        })
        .collect()
}

fn orbits_under(elements: &[crate::signed_weyl::SignedPermutation], roots: &[Root]) -> Vec<Vec<Root>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for root in roots {
        if seen.contains(root) {
            continue;
        }
        let orbit: BTreeSet<Root> = elements.iter().map(|w| w.act_on_root(root).abs()).collect();
        seen.extend(orbit.iter().copied());
        out.push(orbit.into_iter().collect());
    }
    out
}

fn format_roots(roots: &[Root]) -> String {
    let words: Vec<String> = roots.iter().map(|r| r.to_string()).collect();
    format!("{{{}}}", words.join(", "))
}

/// Every generated datum of rank exactly `r` from one template, in a fixed
/// order.
pub fn template_cases(t: &Template, r: usize) -> Vec<CorpusCase> {
    let group = t.algebra.group();
    let mut out = Vec::new();
    for x_gens in &t.x_tau_choices {
        let x_tau = group.generated_subgroup(x_gens);
        for tuple in multisets(t.algebra.labels().len(), r) {
            let blocks: Vec<u32> = tuple.iter().map(|&l| t.algebra.labels()[l].block_size).collect();
            let tau = TauData { x_tau: x_tau.clone(), generic: true, mult_one: true };
            let pi = PiTuple::new(tuple.clone(), tau);
            let x_pi = t.algebra.stabilizer_x(&pi);
            let realizable: BTreeSet<Twist> =
                realizable_twists_raw(&t.algebra, &pi).into_iter().map(|(chi, _)| chi).collect();
            let candidates = candidate_roots(&t.algebra, &pi);
            for hat in group.subgroups() {
                if !x_pi.iter().all(|x| hat.contains(x)) || !hat.iter().all(|h| realizable.contains(h)) {
                    continue;
                }
                let w_sigma = w_sigma_from(&t.algebra, &pi, &hat);
                for delta in delta_choices(&orbits_under(&w_sigma, &candidates)) {
                    let Ok(datum) = InducingDatum::from_parts(
                        blocks.clone(),
                        1,
                        t.algebra.clone(),
                        pi.clone(),
                        delta.clone(),
                        WSigmaHatMode::Explicit(hat.clone()),
                        ParseOptions::default(),
                    ) else {
                        continue;
                    };
                    let ids: Vec<&str> = tuple.iter().map(|&l| t.algebra.label_id(l)).collect();
                    let name = format!(
                        "{}[{}] x_tau={} hat={} delta={}",
                        t.name,
                        ids.join(","),
                        format_set(group, &x_tau),
                        format_set(group, &hat),
                        format_roots(&delta)
                    );
                    out.push(CorpusCase { name, datum });
                }
            }
        }
    }
    out
}

/// The shipped fixtures of rank at most `r_max`.
pub fn fixture_cases(r_max: usize) -> Vec<CorpusCase> {
    FIXTURE_NAMES
        .iter()
        .filter_map(|name| {
            let datum = parse_datum(&fixture_json(name).ok()?, ParseOptions::default()).expect("fixtures validate");
            (datum.rank() <= r_max).then(|| CorpusCase { name: format!("fixture {name}"), datum })
        })
        .collect()
}

/// All generated data with `1 ≤ r ≤ r_max`, followed by the fixtures.
pub fn generate(r_max: usize) -> Vec<CorpusCase> {
    let mut out = Vec::new();
    let templates = templates();
    for r in 1..=r_max {
        for t in &templates {
            out.extend(template_cases(t, r));
        }
    }
    out.extend(fixture_cases(r_max));
    out
}

/// Block-size patterns occurring in the corpus at rank `r`: every sequence
/// over the template block sizes.
pub fn block_patterns(r: usize) -> Vec<Vec<u32>> {
    let sizes: BTreeSet<u32> =
        templates().iter().flat_map(|t| t.algebra.labels().iter().map(|l| l.block_size).collect::<Vec<_>>()).collect();
    let sizes: Vec<u32> = sizes.into_iter().collect();
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                sizes.iter().map(move |&s| {
                    let mut q = p.clone();
                    q.push(s);
                    q
                })
            })
            .collect();
    }
    out
}

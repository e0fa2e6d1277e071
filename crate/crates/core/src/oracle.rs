//! Brute-force oracle suites. Each recomputes a structural claim from the
//! definitions (all of `W`, all sign subsets, all pairs) and compares it with
//! the analysis. Failures are findings: they carry the offending datum.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::{block_patterns, generate, CorpusCase};
use crate::datum::InducingDatum;
use crate::fixed_space::CoordinateModel;
use crate::mackey::{character_table, verify_induced_matrices, SemidirectPresentation};
use crate::rgroup::{analyze, RGroupAnalysis};
use crate::signed_weyl::{weyl_group, SignedPermutation};

pub const MAX_ORACLE_RANK: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scope {
    /// Every element of `R(σ)` over `χ` has permutation part `s_χ`.
    PermutationUniqueness,
    /// `B_χ ⊆ B_1` whenever `s_χ C_{B_1} ∈ R(σ)`.
    SignMinimality,
    /// `w_{χ1} w_{χ2} = w_{χ1χ2}` and `R(σ) = Γ_σ ⋉ R_π(σ)`.
    Complement,
    /// Regular iff `r`-cycle with an odd number of sign changes.
    Regularity,
    /// `R(σ)/R_π(σ) ≅ Ŵ(σ)/X(π)` through the coset map.
    QuotientMap,
    /// `s(B(π)) = B(π)` and no `ε`-fixed `C_j ∈ R(σ)` outside `B(π)`.
    BPiStability,
    /// Character tables and induced matrices for every `R(σ)`.
    Mackey,
}

impl Scope {
    pub const ALL: [Scope; 7] = [
        Scope::PermutationUniqueness,
        Scope::SignMinimality,
        Scope::Complement,
        Scope::Regularity,
        Scope::QuotientMap,
        Scope::BPiStability,
        Scope::Mackey,
    ];

    /// Command-line token.
    pub fn token(self) -> &'static str {
        match self {
            Scope::PermutationUniqueness => "lemma33",
            Scope::SignMinimality => "lemma36",
            Scope::Complement => "thm37",
            Scope::Regularity => "thm39",
            Scope::QuotientMap => "prop32",
            Scope::BPiStability => "lemma38",
            Scope::Mackey => "mackey",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Scope::PermutationUniqueness => "permutation part of R(sigma) elements over chi is s_chi",
            Scope::SignMinimality => "B_chi is contained in every admissible sign set",
            Scope::Complement => "w_chi1 w_chi2 = w_chi1chi2 and R(sigma) = Gamma x| R_pi(sigma)",
            Scope::Regularity => "fixed space is zero iff r-cycle with |B| odd",
            Scope::QuotientMap => "coset map R(sigma) -> W^(sigma)/X(pi) is onto with kernel R_pi(sigma)",
            Scope::BPiStability => "s(B(pi)) = B(pi) and no eps-fixed C_j outside B(pi) in R(sigma)",
            Scope::Mackey => "sum of squared degrees, orthogonality, traces of induced matrices",
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// `all` or one scope token.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selection {
    All,
    One(Scope),
}

impl Selection {
    pub fn scopes(self) -> Vec<Scope> {
        match self {
            Selection::All => Scope::ALL.to_vec(),
            Selection::One(s) => vec![s],
        }
    }
}

impl FromStr for Selection {
    type Err = String;

    fn from_str(s: &str) -> Result<Selection, String> {
        if s == "all" {
            return Ok(Selection::All);
        }
        Scope::ALL.iter().find(|x| x.token() == s).map(|&x| Selection::One(x)).ok_or_else(|| {
            let names: Vec<&str> = Scope::ALL.iter().map(|x| x.token()).collect();
            format!("unknown oracle scope {s:?}; expected one of {}, all", names.join(", "))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub case: String,
    pub detail: String,
    /// Canonical JSON of the datum, when there is one.
    pub datum: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScopeResult {
    pub scope: String,
    pub description: String,
    pub r_max: usize,
    pub data: usize,
    pub checks: usize,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
    pub notes: Vec<String>,
}

impl ScopeResult {
    pub fn summary_line(&self) -> String {
        format!(
            "{} {:<8} r<={} data={} checks={}",
            if self.passed { "PASS" } else { "FAIL" },
            self.scope,
            self.r_max,
            self.data,
            self.checks
        )
    }
}

/// `R(σ)` by definition: every `w ∈ W` realizing some `χ ∈ Ŵ(σ)` and
/// positive on `Δ'`.
pub fn brute_force_r_sigma(d: &InducingDatum) -> Vec<SignedPermutation> {
    let mut out: Vec<SignedPermutation> = weyl_group(&d.blocks)
        .into_iter()
        .filter(|w| w.is_positive_on(&d.delta_prime))
        .filter(|w| d.w_sigma_hat.iter().any(|&chi| d.algebra.realizes(&d.pi, w, chi)))
        .collect();
    out.sort();
    out
}

fn fail(detail: impl Into<String>) -> Result<usize, String> {
    Err(detail.into())
}

fn brute_coset(d: &InducingDatum, a: &RGroupAnalysis, w: &SignedPermutation) -> Result<usize, String> {
    let chi = d
        .w_sigma_hat
        .iter()
        .find(|&&chi| d.algebra.realizes(&d.pi, w, chi))
        .ok_or_else(|| format!("{w} realizes no twist in W^(sigma)"))?;
    a.coset_index(*chi).ok_or_else(|| format!("{} has no chi-table coset", d.format_twist(*chi)))
}

fn permutation_uniqueness(d: &InducingDatum, a: &RGroupAnalysis, brute: &[SignedPermutation]) -> Result<usize, String> {
    let mut seen: BTreeMap<usize, SignedPermutation> = BTreeMap::new();
    for w in brute {
        let k = brute_coset(d, a, w)?;
        let s = w.permutation_part();
        if s != a.chi_table[k].s_chi {
            return fail(format!(
                "{w} realizes {} but its permutation part {s} differs from s_chi = {}",
                d.format_twist(a.chi_table[k].chi),
                a.chi_table[k].s_chi
            ));
        }
        if let Some(prev) = seen.insert(k, s.clone()) {
            if prev != s {
                return fail(format!("two permutation parts {prev} and {s} over one coset"));
            }
        }
    }
    Ok(brute.len())
}

fn sign_minimality(d: &InducingDatum, a: &RGroupAnalysis) -> Result<usize, String> {
    let r = a.rank;
    let mut checks = 0;
    for (k, e) in a.chi_table.iter().enumerate() {
        let b_chi: u32 = e.b_chi.iter().map(|&i| 1u32 << i).sum();
        if !a.in_r_sigma(&e.w_chi) {
            return fail(format!("w_chi = {} is not in R(sigma)", e.w_chi));
        }
        for mask in 0u32..(1 << r) {
            checks += 1;
            let w = SignedPermutation::new(e.s_chi.perm().to_vec(), (0..r).filter(|i| mask >> i & 1 == 1))
                .expect("valid");
            if a.in_r_sigma(&w) && brute_coset(d, a, &w)? == k && b_chi & !mask != 0 {
                return fail(format!(
                    "{w} lies in R(sigma) over {} but misses part of B_chi of {}",
                    d.format_twist(e.chi),
                    e.w_chi
                ));
            }
        }
    }
    Ok(checks)
}

fn complement(d: &InducingDatum, a: &RGroupAnalysis) -> Result<usize, String> {
    let group = d.group();
    let mut checks = 0;
    for e1 in &a.chi_table {
        for e2 in &a.chi_table {
            checks += 1;
            let k = a
                .coset_index(group.mul(e1.chi, e2.chi))
                .ok_or_else(|| "the product of two cosets has no chi-table entry".to_string())?;
            let product = &e1.w_chi * &e2.w_chi;
            if product != a.chi_table[k].w_chi {
                return fail(format!(
                    "w_{} w_{} = {product} but w_{} = {}",
                    d.format_twist(e1.chi),
                    d.format_twist(e2.chi),
                    d.format_twist(a.chi_table[k].chi),
                    a.chi_table[k].w_chi
                ));
            }
        }
    }
    let gamma: Vec<SignedPermutation> = a.chi_table.iter().map(|e| e.w_chi.clone()).collect();
    for g in &gamma {
        if !g.is_identity() && a.r_pi_sigma.binary_search(g).is_ok() {
            return fail(format!("{g} lies in both Gamma and R_pi(sigma)"));
        }
    }
    let mut products: Vec<SignedPermutation> =
        gamma.iter().flat_map(|g| a.r_pi_sigma.iter().map(move |n| g * n)).collect();
    products.sort();
    products.dedup();
    checks += products.len();
    if products != a.r_sigma {
        return fail(format!(
            "Gamma R_pi(sigma) has {} elements, R(sigma) has {}",
            products.len(),
            a.r_sigma.len()
        ));
    }
    for w in &a.r_sigma {
        for n in &a.r_pi_sigma {
            checks += 1;
            let c = n.conjugate_by(w);
            if a.r_pi_sigma.binary_search(&c).is_err() {
                return fail(format!("{w} conjugates {n} out of R_pi(sigma)"));
            }
        }
    }
    Ok(checks)
}

fn quotient_map(d: &InducingDatum, a: &RGroupAnalysis) -> Result<usize, String> {
    let group = d.group();
    let k = a.chi_table.len();
    if a.r_sigma.len() != a.r_pi_sigma.len() * k {
        return fail(format!("|R(sigma)| = {} but |R_pi(sigma)| * {k} = {}", a.r_sigma.len(), a.r_pi_sigma.len() * k));
    }
    let q: Vec<usize> = a.r_sigma.iter().map(|w| brute_coset(d, a, w)).collect::<Result<_, _>>()?;
    let mut checks = 0;
    for (i, w1) in a.r_sigma.iter().enumerate() {
        for (j, w2) in a.r_sigma.iter().enumerate() {
            checks += 1;
            let p = a.r_sigma.binary_search(&(w1 * w2)).map_err(|_| format!("{w1} * {w2} leaves R(sigma)"))?;
            let expected = a
                .coset_index(group.mul(a.chi_table[q[i]].chi, a.chi_table[q[j]].chi))
                .ok_or("coset product missing")?;
            if q[p] != expected {
                return fail(format!("the coset map is not multiplicative at {w1}, {w2}"));
            }
        }
    }
    for (i, w) in a.r_sigma.iter().enumerate() {
        let trivial = group.is_identity(a.chi_table[q[i]].chi);
        if trivial != a.r_pi_sigma.binary_search(w).is_ok() {
            return fail(format!("{w}: kernel membership disagrees with R_pi(sigma)"));
        }
    }
    let mut image: Vec<usize> = q.clone();
    image.sort_unstable();
    image.dedup();
    if image.len() != k {
        return fail(format!("the coset map hits {} of {k} cosets", image.len()));
    }
    Ok(checks)
}

fn b_pi_stability(d: &InducingDatum, a: &RGroupAnalysis) -> Result<usize, String> {
    let r = a.rank;
    let mut checks = 0;
    for j in (0..r).filter(|j| !a.b_pi.contains(j)) {
        let l = d.pi.components[j];
        if d.algebra.eps_label(l) == l {
            checks += 1;
            let cj = SignedPermutation::sign_change(r, [j]).expect("in range");
            if a.in_r_sigma(&cj) {
                return fail(format!("{cj} lies in R(sigma) although {} is not in B(pi)", j + 1));
            }
        }
    }
    for w in &a.r_sigma {
        checks += 1;
        let mut image: Vec<usize> = a.b_pi.iter().map(|&i| w.image(i).0).collect();
        image.sort_unstable();
        if image != a.b_pi {
            return fail(format!("{w} moves B(pi)"));
        }
    }
    Ok(checks)
}

fn mackey(a: &RGroupAnalysis) -> Result<usize, String> {
    let p = SemidirectPresentation::from_analysis(a).map_err(|e| e.to_string())?;
    let t = character_table(&p).map_err(|e| e.to_string())?;
    let squares: usize = t.irreps.iter().map(|r| r.dim * r.dim).sum();
    if squares != p.group.order() {
        return fail(format!("sum of squared degrees {squares} != {}", p.group.order()));
    }
    verify_induced_matrices(&p, &t).map_err(|e| e.to_string())?;
    Ok(t.irreps.len() * p.group.order())
}

/// Regularity over all of `W(blocks)`, which contains every `R(σ)` with
/// these blocks.
pub fn regularity_over_weyl_group(blocks: &[u32]) -> Result<usize, String> {
    let model = CoordinateModel::new(blocks.to_vec());
    let mut checks = 0;
    for w in weyl_group(blocks) {
        checks += 1;
        let dim = model.fixed_space_dim(&w);
        if (dim == 0) != CoordinateModel::is_regular_closed_form(&w) {
            return fail(format!("{w} with blocks {blocks:?}: fixed-space dimension {dim}"));
        }
        if let Some(witness) = model.fixed_vector(&w) {
            if !model.verify_fixed(&w, &witness.vector) {
                return fail(format!("{w}: the {:?} witness is not fixed", witness.construction));
            }
        }
    }
    Ok(checks)
}

/// Runs one per-datum suite. `Regularity` checks all of `W(blocks)`.
pub fn check_datum(scope: Scope, d: &InducingDatum, a: &RGroupAnalysis) -> Result<usize, String> {
    let definition = |d: &InducingDatum, a: &RGroupAnalysis| -> Result<Vec<SignedPermutation>, String> {
        let brute = brute_force_r_sigma(d);
        if brute != a.r_sigma {
            return Err(format!(
                "R(sigma) by definition has {} elements, the analysis has {}",
                brute.len(),
                a.r_sigma.len()
            ));
        }
        Ok(brute)
    };
    match scope {
        Scope::PermutationUniqueness => {
            let brute = definition(d, a)?;
            permutation_uniqueness(d, a, &brute)
        }
        Scope::SignMinimality => sign_minimality(d, a),
        Scope::Complement => {
            definition(d, a)?;
            complement(d, a)
        }
        Scope::Regularity => regularity_over_weyl_group(&d.blocks),
        Scope::QuotientMap => quotient_map(d, a),
        Scope::BPiStability => {
            definition(d, a)?;
            b_pi_stability(d, a)
        }
        Scope::Mackey => mackey(a),
    }
}

fn counterexample(case: &CorpusCase, detail: String) -> Counterexample {
    Counterexample { case: case.name.clone(), detail, datum: Some(case.datum.document.to_canonical_json()) }
}

fn construction_note(analyses: &[(usize, RGroupAnalysis)]) -> String {
    let total: usize = analyses.iter().map(|(_, a)| a.chi_table.len()).sum();
    let outside: usize =
        analyses.iter().map(|(_, a)| a.chi_table.iter().filter(|e| !e.construction_in_r).count()).sum();
    format!(
        "chain construction landed in R(sigma) for {} of {total} cosets; the other {outside} were moved into R(sigma) along W'",
        total - outside
    )
}

/// Runs the selected suites over the generated corpus with `r ≤ r_max`.
/// Results come back in `Scope::ALL` order.
pub fn run_oracle(selection: Selection, r_max: usize) -> Result<Vec<ScopeResult>, String> {
    if r_max == 0 || r_max > MAX_ORACLE_RANK {
        return Err(format!("--r-max must be between 1 and {MAX_ORACLE_RANK}, got {r_max}"));
    }
    let scopes = selection.scopes();
    let needs_corpus = scopes.iter().any(|&s| s != Scope::Regularity);
    let corpus = if needs_corpus { generate(r_max) } else { Vec::new() };
    let mut analyses = Vec::new();
    let mut analysis_failure = None;
    for (k, case) in corpus.iter().enumerate() {
        match analyze(&case.datum) {
            Ok(a) => analyses.push((k, a)),
            Err(e) => {
                if analysis_failure.is_none() {
                    analysis_failure = Some(counterexample(case, format!("analysis failed: {e}")));
                }
            }
        }
    }
    let mut out = Vec::new();
    for scope in scopes {
        let mut result = ScopeResult {
            scope: scope.token().to_string(),
            description: scope.description().to_string(),
            r_max,
            data: 0,
            checks: 0,
            passed: true,
            counterexample: analysis_failure.clone(),
            notes: Vec::new(),
        };
        if result.counterexample.is_some() {
            result.passed = false;
        }
        match scope {
            Scope::Regularity => {
                for r in 1..=r_max {
                    for blocks in block_patterns(r) {
                        result.data += 1;
                        match regularity_over_weyl_group(&blocks) {
                            Ok(n) => result.checks += n,
                            Err(detail) => {
                                result.passed = false;
                                result.counterexample.get_or_insert(Counterexample {
                                    case: format!("blocks {blocks:?}"),
                                    detail,
                                    datum: None,
                                });
                                break;
                            }
                        }
                    }
                }
                result.notes.push("every element of W(blocks) for every block pattern in the corpus".into());
            }
            Scope::Mackey => {
                let mut seen = std::collections::BTreeSet::new();
                for (k, a) in &analyses {
                    if !seen.insert((a.r_sigma.clone(), a.gamma.clone(), a.b_pi.clone())) {
                        continue;
                    }
                    result.data += 1;
                    match mackey(a) {
                        Ok(n) => result.checks += n,
                        Err(detail) => {
                            result.passed = false;
                            result.counterexample.get_or_insert(counterexample(&corpus[*k], detail));
                            break;
                        }
                    }
                }
                let largest = analyses.iter().map(|(_, a)| a.r_sigma.len()).max().unwrap_or(0);
                result.notes.push(format!("distinct presentations of R(sigma); largest order {largest}"));
            }
            _ => {
                for (k, a) in &analyses {
                    result.data += 1;
                    match check_datum(scope, &corpus[*k].datum, a) {
                        Ok(n) => result.checks += n,
                        Err(detail) => {
                            result.passed = false;
                            result.counterexample.get_or_insert(counterexample(&corpus[*k], detail));
                            break;
                        }
                    }
                }
                if matches!(scope, Scope::Complement | Scope::PermutationUniqueness) {
                    result.notes.push(construction_note(&analyses));
                }
            }
        }
        out.push(result);
    }
    Ok(out)
}

/// The per-datum suites for `analyze --with-oracle`. Regularity over
/// `W(blocks)` is skipped above `MAX_ORACLE_RANK`.
pub fn run_on_datum(d: &InducingDatum, a: &RGroupAnalysis) -> Vec<ScopeResult> {
    Scope::ALL
        .iter()
        .map(|&scope| {
            let mut result = ScopeResult {
                scope: scope.token().to_string(),
                description: scope.description().to_string(),
                r_max: d.rank(),
                data: 1,
                checks: 0,
                passed: true,
                counterexample: None,
                notes: Vec::new(),
            };
            if scope == Scope::Regularity && d.rank() > MAX_ORACLE_RANK {
                result.data = 0;
                result.notes.push(format!("skipped: W(blocks) is too large at r = {}", d.rank()));
                return result;
            }
            match check_datum(scope, d, a) {
                Ok(n) => result.checks = n,
                Err(detail) => {
                    result.passed = false;
                    result.counterexample = Some(Counterexample {
                        case: "input datum".into(),
                        detail,
                        datum: Some(d.document.to_canonical_json()),
                    });
                }
            }
            result
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::{parse_datum, ParseOptions};
    use crate::fixtures::fixture_json;

    #[test]
    fn scope_tokens_round_trip() {
        for s in Scope::ALL {
            assert_eq!(s.token().parse::<Selection>().unwrap(), Selection::One(s));
        }
        assert_eq!("all".parse::<Selection>().unwrap(), Selection::All);
        assert!("lemma99".parse::<Selection>().is_err());
    }

    #[test]
    fn fixtures_pass_every_suite() {
        for name in ["prime3", "signonly", "siegel1", "gl-reducible", "prime2"] {
            let d = parse_datum(&fixture_json(name).unwrap(), ParseOptions::default()).unwrap();
            let a = analyze(&d).unwrap();
            for r in run_on_datum(&d, &a) {
                assert!(r.passed, "{name} {}: {:?}", r.scope, r.counterexample);
            }
        }
    }

    #[test]
    fn small_corpus_passes() {
        for r in run_oracle(Selection::All, 3).unwrap() {
            assert!(r.passed, "{}: {:?}", r.scope, r.counterexample);
            assert!(r.checks > 0, "{}", r.scope);
        }
    }

    #[test]
    fn r_max_bounds() {
        assert!(run_oracle(Selection::All, 0).is_err());
        assert!(run_oracle(Selection::All, 7).is_err());
    }

    #[test]
    fn broken_analysis_is_caught() {
        let d = parse_datum(&fixture_json("prime3").unwrap(), ParseOptions::default()).unwrap();
        let mut a = analyze(&d).unwrap();
        a.chi_table[1].w_chi = &a.chi_table[1].w_chi * &SignedPermutation::sign_change(3, [0]).unwrap();
        assert!(check_datum(Scope::Complement, &d, &a).is_err());
        let mut a = analyze(&d).unwrap();
        a.chi_table[1].s_chi = SignedPermutation::identity(3);
        assert!(check_datum(Scope::PermutationUniqueness, &d, &a).is_err());
    }
}

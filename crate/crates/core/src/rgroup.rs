//! `W(σ)`, `W′`, `R(π)`, `R(σ)`, the canonical permutations `s_χ`, the
//! minimal sign sets `B_χ`, and the splitting `R(σ) = Γ_σ ⋉ R(π)`.

use std::collections::{BTreeMap, BTreeSet};

use crate::datum::InducingDatum;
use crate::error::AnalysisError;
use crate::signed_weyl::{find_non_closed_pair, generate_subgroup, Root, SignedPermutation};
use crate::twist_labels::{LabelAlgebra, PiTuple, Twist};

/// Every `w` with `π^w ≃ π·χ`, sorted. Slot `i` must receive the label
/// `π_i·χ`, either directly from some `π_j` or as `π_j^ε`; the search only
/// walks those matches, so it never enumerates all of `W`.
pub fn realizing_elements(algebra: &LabelAlgebra, pi: &PiTuple, chi: Twist) -> Vec<SignedPermutation> {
    if !pi.tau.contains(chi) {
        return Vec::new();
    }
    let r = pi.rank();
    let c = &pi.components;
    let options: Vec<Vec<(usize, bool)>> = (0..r)
        .map(|i| {
            let target = algebra.twist_label(c[i], chi);
            let mut opts = Vec::new();
            for (j, &l) in c.iter().enumerate() {
                if l == target {
                    opts.push((j, false));
                }
                if algebra.eps_label(l) == target {
                    opts.push((j, true));
                }
            }
            opts
        })
        .collect();
    let mut out = Vec::new();
    let mut perm = vec![0; r];
    let mut flips = Vec::new();
    let mut used = vec![false; r];
    fn walk(
        i: usize,
        options: &[Vec<(usize, bool)>],
        perm: &mut Vec<usize>,
        flips: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<SignedPermutation>,
    ) {
        if i == options.len() {
            out.push(SignedPermutation::new(perm.clone(), flips.iter().copied()).expect("a bijection"));
            return;
        }
        for &(j, flip) in &options[i] {
            if used[j] {
                continue;
            }
            used[j] = true;
            perm[i] = j;
            if flip {
                flips.push(i);
            }
            walk(i + 1, options, perm, flips, used, out);
            if flip {
                flips.pop();
            }
            used[j] = false;
        }
    }
    walk(0, &options, &mut perm, &mut flips, &mut used, &mut out);
    out.sort();
    out
}

/// `{w : ∃χ ∈ Ŵ, π^w ≃ π·χ}`, sorted.
pub fn w_sigma_from(algebra: &LabelAlgebra, pi: &PiTuple, w_sigma_hat: &[Twist]) -> Vec<SignedPermutation> {
    let set: BTreeSet<SignedPermutation> =
        w_sigma_hat.iter().flat_map(|&chi| realizing_elements(algebra, pi, chi)).collect();
    set.into_iter().collect()
}

pub fn positive_part(elements: &[SignedPermutation], delta: &[Root]) -> Vec<SignedPermutation> {
    elements.iter().filter(|w| w.is_positive_on(delta)).cloned().collect()
}

/// If `elements` is exactly `⟨C_i | i ∈ B⟩` for some `B`, returns `B`
/// (0-based, sorted); otherwise an element that breaks the pattern.
pub fn sign_change_support(elements: &[SignedPermutation]) -> Result<Vec<usize>, SignedPermutation> {
    if let Some(bad) = elements.iter().find(|w| !w.is_pure_sign_change()) {
        return Err(bad.clone());
    }
    let support: Vec<usize> = elements.iter().filter(|w| w.sign_count() == 1).map(|w| w.flips()[0]).collect();
    let mask: u32 = support.iter().map(|&i| 1u32 << i).sum();
    if let Some(bad) = elements.iter().find(|w| w.sign_mask() & !mask != 0) {
        return Err(bad.clone());
    }
    let mut support = support;
    support.sort_unstable();
    if elements.len() != 1 << support.len() {
        // a missing product of generators
        let present: BTreeSet<u32> = elements.iter().map(|w| w.sign_mask()).collect();
        let rank = elements.first().map_or(0, |w| w.rank());
        let mut sub = mask;
        loop {
            if !present.contains(&sub) {
                let flips = (0..rank).filter(|i| sub >> i & 1 == 1);
                return Err(SignedPermutation::sign_change(rank, flips).expect("in range"));
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
    }
    Ok(support)
}

/// The data attached to one coset `χ·X(π)` of `Ŵ(σ)/X(π)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiEntry {
    /// The least element of the coset.
    pub chi: Twist,
    pub coset: Vec<Twist>,
    /// Output of the chain construction.
    pub s_constructed: SignedPermutation,
    /// `s_constructed·c` with `c` from the sign rule.
    pub constructed: SignedPermutation,
    /// When false, `s_χ` and `B_χ` come from the element of `R(σ)` in
    /// `constructed·W'` instead.
    pub construction_in_r: bool,
    pub s_chi: SignedPermutation,
    /// 0-based, sorted.
    pub b_chi: Vec<usize>,
    pub w_chi: SignedPermutation,
}

#[derive(Debug, Clone)]
pub struct RGroupAnalysis {
    pub rank: usize,
    pub w_sigma_hat: Vec<Twist>,
    pub x_pi: Vec<Twist>,
    pub w_sigma: Vec<SignedPermutation>,
    pub w_prime: Vec<SignedPermutation>,
    pub w_pi: Vec<SignedPermutation>,
    pub r_pi: Vec<SignedPermutation>,
    /// 0-based, sorted.
    pub b_pi: Vec<usize>,
    pub r_sigma: Vec<SignedPermutation>,
    pub r_pi_sigma: Vec<SignedPermutation>,
    pub chi_table: Vec<ChiEntry>,
    /// `{w_χ}`, sorted.
    pub gamma: Vec<SignedPermutation>,
}

impl RGroupAnalysis {
    /// Index into `chi_table` of the coset containing `chi`.
    pub fn coset_index(&self, chi: Twist) -> Option<usize> {
        self.chi_table.iter().position(|e| e.coset.binary_search(&chi).is_ok())
    }

    pub fn entry_for(&self, chi: Twist) -> Option<&ChiEntry> {
        self.coset_index(chi).map(|k| &self.chi_table[k])
    }

    /// The coset `χ·X(π)` with `π^w ≃ π·χ`, as an index into `chi_table`.
    pub fn quotient_image(&self, d: &InducingDatum, w: &SignedPermutation) -> Option<usize> {
        self.w_sigma_hat.iter().find(|&&chi| d.algebra.realizes(&d.pi, w, chi)).and_then(|&chi| self.coset_index(chi))
    }

    pub fn in_r_sigma(&self, w: &SignedPermutation) -> bool {
        self.r_sigma.binary_search(w).is_ok()
    }
}

/// `W(σ)`, checked to be a group.
pub fn compute_w_sigma(d: &InducingDatum) -> Result<Vec<SignedPermutation>, AnalysisError> {
    let w_sigma = w_sigma_from(&d.algebra, &d.pi, &d.w_sigma_hat);
    if let Some((a, b)) = find_non_closed_pair(&w_sigma) {
        return Err(AnalysisError::inconsistent("W(sigma)", "closure", format!("{a} * {b} is not in W(sigma)")));
    }
    Ok(w_sigma)
}

pub struct WPrimeAndR {
    pub w_prime: Vec<SignedPermutation>,
    pub w_pi: Vec<SignedPermutation>,
    pub r_pi: Vec<SignedPermutation>,
    pub r_sigma: Vec<SignedPermutation>,
    pub b_pi: Vec<usize>,
}

pub fn compute_w_prime_and_r(d: &InducingDatum, w_sigma: &[SignedPermutation]) -> Result<WPrimeAndR, AnalysisError> {
    let r = d.rank();
    let reflections: Vec<SignedPermutation> = d.delta_prime.iter().map(|a| a.reflection(r)).collect();
    let w_prime = generate_subgroup(r, &reflections);
    let w_pi = realizing_elements(&d.algebra, &d.pi, d.group().identity());
    let r_pi = positive_part(&w_pi, &d.delta_prime);
    let b_pi = sign_change_support(&r_pi).map_err(|bad| {
        AnalysisError::inconsistent("R(pi)", "sign-change form", format!("{bad} lies in R(pi)"))
    })?;
    let r_sigma = positive_part(w_sigma, &d.delta_prime);
    if let Some(w) = w_prime.iter().find(|w| w_sigma.binary_search(w).is_err()) {
        return Err(AnalysisError::inconsistent("W'", "W' inside W(sigma)", format!("{w} is not in W(sigma)")));
    }
    if w_sigma.len() != w_prime.len() * r_sigma.len() {
        return Err(AnalysisError::inconsistent(
            "R(sigma)",
            "W(sigma) = R(sigma) W'",
            format!("|W(sigma)| = {} but |W'| * |R(sigma)| = {} * {}", w_sigma.len(), w_prime.len(), r_sigma.len()),
        ));
    }
    Ok(WPrimeAndR { w_prime, w_pi, r_pi, r_sigma, b_pi })
}

/// The Ω-set construction of `s_χ` as a sign-free element.
///
/// Indices with `π_i·χ ∈ {π_i, π_i^ε}` are fixed. The rest are chained from
/// the least unused index: the next index is the least unused `j` with
/// `π_j ≃ π_i·χ`, or failing that the greatest unused `j` with
/// `π_j^ε ≃ π_i·χ`. The start of the current cycle stays available so the
/// cycle can close.
///
/// The element this produces realizes `χ` but need not lie in `R(σ)`: with
/// `π_1 ≃ π_2` and `π_1^ε ≃ π_1·χ` it fixes both indices, and `C_1 C_2` is
/// negative on `e_1 − e_2 ∈ Δ'`. `compute_entry` repairs that case.
pub fn compute_s_chi(algebra: &LabelAlgebra, pi: &PiTuple, chi: Twist) -> Result<SignedPermutation, AnalysisError> {
    let r = pi.rank();
    let c = &pi.components;
    let twisted: Vec<usize> = c.iter().map(|&l| algebra.twist_label(l, chi)).collect();
    let mut s: Vec<usize> = (0..r).collect();
    let mut remaining: BTreeSet<usize> =
        (0..r).filter(|&i| c[i] != twisted[i] && algebra.eps_label(c[i]) != twisted[i]).collect();
    while let Some(start) = remaining.pop_first() {
        let mut cur = start;
        loop {
            let candidates = || remaining.iter().copied().chain(std::iter::once(start));
            let next = candidates()
                .filter(|&j| c[j] == twisted[cur])
                .min()
                .or_else(|| candidates().filter(|&j| algebra.eps_label(c[j]) == twisted[cur]).max());
            let Some(next) = next else {
                return Err(AnalysisError::inconsistent(
                    "s_chi",
                    "cycle construction",
                    format!(
                        "{}: no unused index j with pi_j or eps(pi_j) equal to pi_{}*chi",
                        algebra.group().format(chi),
                        cur + 1
                    ),
                ));
            };
            s[cur] = next;
            if next == start {
                break;
            }
            remaining.remove(&next);
            cur = next;
        }
    }
    Ok(SignedPermutation::new(s, []).expect("cycles partition the indices"))
}

/// `s_χ·c` with `c(i) = −i` exactly when `π_{s(i)} ≄ π_i·χ`.
pub fn constructed_element(
    algebra: &LabelAlgebra,
    pi: &PiTuple,
    chi: Twist,
    s_chi: &SignedPermutation,
) -> Result<SignedPermutation, AnalysisError> {
    let c = &pi.components;
    let mut flips = Vec::new();
    for i in 0..pi.rank() {
        let target = algebra.twist_label(c[i], chi);
        let source = c[s_chi.perm()[i]];
        if source == target {
            continue;
        }
        if algebra.eps_label(source) != target {
            return Err(AnalysisError::inconsistent(
                "w_chi",
                "sign rule",
                format!("neither pi_{0} nor eps(pi_{0}) matches pi_{1}*chi", s_chi.perm()[i] + 1, i + 1),
            ));
        }
        flips.push(i);
    }
    Ok(SignedPermutation::new(s_chi.perm().to_vec(), flips).expect("valid permutation"))
}

fn compute_entry(
    d: &InducingDatum,
    chi: Twist,
    coset: Vec<Twist>,
    r_sigma: &[SignedPermutation],
    w_prime: &[SignedPermutation],
    b_pi: &[usize],
) -> Result<ChiEntry, AnalysisError> {
    let word = d.format_twist(chi);
    let s_constructed = compute_s_chi(&d.algebra, &d.pi, chi)?;
    let constructed = constructed_element(&d.algebra, &d.pi, chi, &s_constructed)?;
    if !d.algebra.realizes(&d.pi, &constructed, chi) {
        return Err(AnalysisError::inconsistent(
            "w_chi",
            "pi^w ~ pi*chi",
            format!("{constructed} does not realize {word}"),
        ));
    }
    let construction_in_r = r_sigma.binary_search(&constructed).is_ok();
    let in_r = if construction_in_r {
        constructed.clone()
    } else {
        project_to_r(&constructed, r_sigma, w_prime).map_err(|n| {
            AnalysisError::inconsistent(
                "w_chi",
                "one element of R(sigma) in the W' coset",
                format!("{n} elements of {constructed}W' built for {word} lie in R(sigma)"),
            )
        })?
    };
    let s_chi = in_r.permutation_part();
    let b_chi: Vec<usize> = in_r.flips().into_iter().filter(|i| !b_pi.contains(i)).collect();
    let w_chi = SignedPermutation::new(s_chi.perm().to_vec(), b_chi.iter().copied()).expect("valid");
    if r_sigma.binary_search(&w_chi).is_err() {
        return Err(AnalysisError::inconsistent(
            "w_chi",
            "minimal element lies in R(sigma)",
            format!("{w_chi} for {word} is not in R(sigma)"),
        ));
    }
    Ok(ChiEntry { chi, coset, s_constructed, constructed, construction_in_r, s_chi, b_chi, w_chi })
}

/// The element of `w·W'` lying in `R(σ)`; `W(σ) = R(σ) ⋉ W'` makes it unique.
/// On failure returns how many there were.
pub fn project_to_r(
    w: &SignedPermutation,
    r_sigma: &[SignedPermutation],
    w_prime: &[SignedPermutation],
) -> Result<SignedPermutation, usize> {
    let hits: Vec<SignedPermutation> =
        w_prime.iter().map(|u| w * u).filter(|x| r_sigma.binary_search(x).is_ok()).collect();
    match hits.as_slice() {
        [one] => Ok(one.clone()),
        _ => Err(hits.len()),
    }
}

/// Runs every stage and every cross-check that is cheap at the datum's size.
pub fn analyze(d: &InducingDatum) -> Result<RGroupAnalysis, AnalysisError> {
    let w_sigma = compute_w_sigma(d)?;
    let WPrimeAndR { w_prime, w_pi, r_pi, r_sigma, b_pi } = compute_w_prime_and_r(d, &w_sigma)?;
    let r_pi_sigma: Vec<SignedPermutation> =
        r_pi.iter().filter(|w| w_sigma.binary_search(w).is_ok()).cloned().collect();
    let group = d.group();
    let x_pi = d.x_pi();
    let mut chi_table = Vec::new();
    for chi in group.coset_representatives(&d.w_sigma_hat, &x_pi) {
        let mut coset: Vec<Twist> = x_pi.iter().map(|&x| group.mul(chi, x)).collect();
        coset.sort();
        chi_table.push(compute_entry(d, chi, coset, &r_sigma, &w_prime, &b_pi)?);
    }
    let mut gamma: Vec<SignedPermutation> = chi_table.iter().map(|e| e.w_chi.clone()).collect();
    gamma.sort();
    gamma.dedup();
    let analysis = RGroupAnalysis {
        rank: d.rank(),
        w_sigma_hat: d.w_sigma_hat.clone(),
        x_pi,
        w_sigma,
        w_prime,
        w_pi,
        r_pi,
        b_pi,
        r_sigma,
        r_pi_sigma,
        chi_table,
        gamma,
    };
    check_complement(d, &analysis)?;
    check_quotient_map(d, &analysis)?;
    check_b_pi_stability(d, &analysis)?;
    Ok(analysis)
}

/// `w_{χ1} w_{χ2} = w_{χ1χ2}` and the internal semidirect product axioms.
pub fn check_complement(d: &InducingDatum, a: &RGroupAnalysis) -> Result<(), AnalysisError> {
    let group = d.group();
    for e1 in &a.chi_table {
        for e2 in &a.chi_table {
            let product = &e1.w_chi * &e2.w_chi;
            let chi = group.mul(e1.chi, e2.chi);
            let target = a.entry_for(chi).ok_or_else(|| {
                AnalysisError::inconsistent("Gamma", "closure of W^(sigma)", format!("{} not found", d.format_twist(chi)))
            })?;
            if product != target.w_chi {
                return Err(AnalysisError::inconsistent(
                    "Gamma",
                    "w_chi1 w_chi2 = w_chi1chi2",
                    format!(
                        "chi1 = {}, chi2 = {}: {} * {} = {} but w_chi1chi2 = {}",
                        d.format_twist(e1.chi),
                        d.format_twist(e2.chi),
                        e1.w_chi,
                        e2.w_chi,
                        product,
                        target.w_chi
                    ),
                ));
            }
        }
    }
    if a.gamma.len() != a.chi_table.len() {
        return Err(AnalysisError::inconsistent("Gamma", "injectivity", "two cosets share w_chi"));
    }
    let r_pi: BTreeSet<&SignedPermutation> = a.r_pi_sigma.iter().collect();
    if let Some(w) = a.gamma.iter().find(|w| !w.is_identity() && r_pi.contains(w)) {
        return Err(AnalysisError::inconsistent("Gamma", "Gamma meets R_pi(sigma) trivially", format!("{w}")));
    }
    let mut products = BTreeSet::new();
    for g in &a.gamma {
        for h in &a.r_pi_sigma {
            products.insert(g * h);
        }
    }
    let r_sigma: BTreeSet<SignedPermutation> = a.r_sigma.iter().cloned().collect();
    if products != r_sigma {
        return Err(AnalysisError::inconsistent(
            "Gamma",
            "Gamma * R_pi(sigma) = R(sigma)",
            format!("{} products against |R(sigma)| = {}", products.len(), r_sigma.len()),
        ));
    }
    for g in &a.r_sigma {
        for h in &a.r_pi_sigma {
            let conj = h.conjugate_by(g);
            if !r_pi.contains(&conj) {
                return Err(AnalysisError::inconsistent(
                    "Gamma",
                    "R_pi(sigma) normal in R(sigma)",
                    format!("{g} conjugates {h} to {conj}"),
                ));
            }
        }
    }
    Ok(())
}

/// `R(σ)/R_π(σ) ≃ Ŵ(σ)/X(π)` through `w ↦ χ·X(π)` with `π^w ≃ π·χ`.
pub fn check_quotient_map(d: &InducingDatum, a: &RGroupAnalysis) -> Result<(), AnalysisError> {
    let stage = "quotient R(sigma)/R_pi(sigma)";
    let k = a.chi_table.len();
    if a.r_sigma.len() != a.r_pi_sigma.len() * k {
        return Err(AnalysisError::inconsistent(
            stage,
            "cardinality",
            format!("|R(sigma)| = {} but |R_pi(sigma)| * |W^/X| = {} * {k}", a.r_sigma.len(), a.r_pi_sigma.len()),
        ));
    }
    let mut image = BTreeMap::new();
    for w in &a.r_sigma {
        let q = a.quotient_image(d, w).ok_or_else(|| {
            AnalysisError::inconsistent(stage, "well-defined", format!("{w} realizes no twist in W^(sigma)"))
        })?;
        image.insert(w.clone(), q);
    }
    let group = d.group();
    for w1 in &a.r_sigma {
        for w2 in &a.r_sigma {
            let (q1, q2) = (image[w1], image[w2]);
            let expected = a.coset_index(group.mul(a.chi_table[q1].chi, a.chi_table[q2].chi));
            let got = image.get(&(w1 * w2)).copied();
            if got.is_none() || got != expected {
                return Err(AnalysisError::inconsistent(
                    stage,
                    "homomorphism",
                    format!("{w1} * {w2} does not map to the product coset"),
                ));
            }
        }
    }
    let kernel: Vec<&SignedPermutation> = image.iter().filter(|(_, &q)| q == a.coset_index(group.identity()).unwrap_or(usize::MAX)).map(|(w, _)| w).collect();
    let r_pi_sigma: Vec<&SignedPermutation> = a.r_pi_sigma.iter().collect();
    if kernel != r_pi_sigma {
        return Err(AnalysisError::inconsistent(stage, "kernel", "the kernel differs from R_pi(sigma)"));
    }
    let hit: BTreeSet<usize> = image.values().copied().collect();
    if hit.len() != k {
        return Err(AnalysisError::inconsistent(stage, "surjectivity", format!("{} of {k} cosets reached", hit.len())));
    }
    Ok(())
}

/// (a) no `C_j ∈ R(σ)` with `j ∉ B(π)` and `π_j^ε ≃ π_j`;
/// (b) `s(B(π)) = B(π)` for every `s·C_B ∈ R(σ)`.
pub fn check_b_pi_stability(d: &InducingDatum, a: &RGroupAnalysis) -> Result<(), AnalysisError> {
    let r = a.rank;
    for j in (0..r).filter(|j| !a.b_pi.contains(j)) {
        let l = d.pi.components[j];
        if d.algebra.eps_label(l) == l {
            let cj = SignedPermutation::sign_change(r, [j]).expect("in range");
            if a.in_r_sigma(&cj) {
                return Err(AnalysisError::inconsistent(
                    "B(pi) stability",
                    "(a) no eps-fixed sign change outside B(pi)",
                    format!("{cj} lies in R(sigma)"),
                ));
            }
        }
    }
    for w in &a.r_sigma {
        let mut image: Vec<usize> = a.b_pi.iter().map(|&i| w.perm()[i]).collect();
        image.sort_unstable();
        if image != a.b_pi {
            return Err(AnalysisError::inconsistent("B(pi) stability", "(b) s(B(pi)) = B(pi)", format!("{w} moves B(pi)")));
        }
    }
    Ok(())
}

//! Irreducible representations of `G = A ⋉ N` with `A` abelian and
//! `N = Z_2^k` generated by sign changes, by the little-group method:
//! `ρ_{κ,λ} = Ind_{A_κ N}^{G}(λ ⊗ κ)` for `κ` running over `A`-orbit
//! representatives of characters of `N` and `λ` over characters of the
//! stabilizer `A_κ`.

use std::collections::{BTreeSet, HashMap};

use crate::cyclotomic::{Cyclo, CyclotomicField};
use crate::error::AnalysisError;
use crate::finite_group::FiniteGroup;
use crate::rgroup::RGroupAnalysis;
use crate::signed_weyl::SignedPermutation;
use crate::twist_labels::lcm;

#[derive(Debug, Clone)]
pub struct SemidirectPresentation {
    pub group: FiniteGroup,
    /// Indices of `A`, sorted.
    pub complement: Vec<usize>,
    /// Indices of `N`, sorted.
    pub normal: Vec<usize>,
    /// Block indices `i` (0-based) with `C_i` a generator of `N`.
    pub basis: Vec<usize>,
    /// `lcm(exponent of A, 2)`.
    pub field_order: u32,
}

impl SemidirectPresentation {
    pub fn new(
        elements: &[SignedPermutation],
        complement: &[SignedPermutation],
        basis: &[usize],
    ) -> Result<SemidirectPresentation, AnalysisError> {
        let stage = "little-group presentation";
        let group = FiniteGroup::new(elements)?;
        let rank = group.element(0).rank();
        let lookup = |w: &SignedPermutation| {
            group.index_of(w).ok_or_else(|| AnalysisError::inconsistent(stage, "membership", format!("{w} not in the group")))
        };
        let mut a: Vec<usize> = complement.iter().map(lookup).collect::<Result<_, _>>()?;
        a.sort_unstable();
        a.dedup();
        let gens: Vec<usize> = basis
            .iter()
            .map(|&i| lookup(&SignedPermutation::sign_change(rank, [i]).expect("index in range")))
            .collect::<Result<_, _>>()?;
        let normal = group.generated(&gens);
        if normal.len() != 1 << basis.len() {
            return Err(AnalysisError::inconsistent(stage, "N = Z_2^k", "sign changes are not independent"));
        }
        if group.generated(&a) != a {
            return Err(AnalysisError::inconsistent(stage, "A is a subgroup", "complement is not closed"));
        }
        if !group.is_abelian_subset(&a) {
            return Err(AnalysisError::Unsupported("the complement A is not abelian".into()));
        }
        if !group.is_normal(&normal) {
            return Err(AnalysisError::inconsistent(stage, "N normal", "N is not normal"));
        }
        if a.iter().any(|x| *x != 0 && normal.binary_search(x).is_ok()) {
            return Err(AnalysisError::inconsistent(stage, "A meets N trivially", "A and N share a non-identity element"));
        }
        if a.len() * normal.len() != group.order() {
            return Err(AnalysisError::inconsistent(
                stage,
                "|A| |N| = |G|",
                format!("{} * {} != {}", a.len(), normal.len(), group.order()),
            ));
        }
        let exponent = a.iter().fold(1u32, |acc, &x| lcm(acc, group.element_order(x) as u32));
        Ok(SemidirectPresentation {
            group,
            complement: a,
            normal,
            basis: basis.to_vec(),
            field_order: lcm(exponent, 2),
        })
    }

    /// `R(σ) = Γ_σ ⋉ R(π)`.
    pub fn from_analysis(a: &RGroupAnalysis) -> Result<SemidirectPresentation, AnalysisError> {
        SemidirectPresentation::new(&a.r_sigma, &a.gamma, &a.b_pi)
    }

    pub fn field(&self) -> CyclotomicField {
        CyclotomicField::new(self.field_order)
    }

    /// `κ(n) = −1`, for `κ` given as a mask of block indices and `n ∈ N`.
    pub fn kappa_is_negative(&self, kappa: u32, n: usize) -> bool {
        (self.group.element(n).sign_mask() & kappa).count_ones() % 2 == 1
    }

    /// `(a·κ)(n) = κ(a⁻¹ n a)`.
    pub fn act_on_kappa(&self, a: usize, kappa: u32) -> u32 {
        let rank = self.group.element(0).rank();
        let mut out = 0;
        for &i in &self.basis {
            let n = self.group.index_of(&SignedPermutation::sign_change(rank, [i]).expect("in range")).expect("in N");
            if self.kappa_is_negative(kappa, self.group.conj(n, a)) {
                out |= 1 << i;
            }
        }
        out
    }

    /// All characters of `N` as masks, ascending.
    pub fn kappas(&self) -> Vec<u32> {
        let full: u32 = self.basis.iter().map(|&i| 1u32 << i).sum();
        let mut out = Vec::new();
        let mut sub = 0u32;
        loop {
            out.push(sub);
            if sub == full {
                break;
            }
            sub = (sub.wrapping_sub(full)) & full;
        }
        out.sort_unstable();
        out
    }
}

/// Characters of an abelian group, as exponents of `z = e^{2πi/order}`
/// indexed like `elements`. The trivial character comes first.
pub fn abelian_characters(group: &FiniteGroup, elements: &[usize], order: u32) -> Vec<Vec<u32>> {
    let pos: HashMap<usize, usize> = elements.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    // characters on the subgroup built so far
    let mut sub = vec![group.identity()];
    let mut chars: Vec<HashMap<usize, u32>> = vec![HashMap::from([(group.identity(), 0)])];
    for &g in elements {
        if sub.contains(&g) {
            continue;
        }
        let mut k = 1;
        let mut gk = g;
        while !sub.contains(&gk) {
            gk = group.mul(gk, g);
            k += 1;
        }
        let mut new_sub = Vec::new();
        let mut power = group.identity();
        let mut powers = Vec::new();
        for _ in 0..k {
            powers.push(power);
            for &s in &sub {
                new_sub.push(group.mul(power, s));
            }
            power = group.mul(power, g);
        }
        let mut next = Vec::new();
        for psi in &chars {
            let target = psi[&gk];
            for x in (0..order).filter(|x| (k as u64 * *x as u64) % order as u64 == target as u64) {
                let mut ext = HashMap::new();
                for (i, &p) in powers.iter().enumerate() {
                    for &s in &sub {
                        ext.insert(group.mul(p, s), (psi[&s] + i as u32 * x) % order);
                    }
                }
                next.push(ext);
            }
        }
        sub = new_sub;
        chars = next;
    }
    let mut out: Vec<Vec<u32>> = chars
        .into_iter()
        .map(|c| {
            let mut v = vec![0; elements.len()];
            for (e, x) in c {
                v[pos[&e]] = x;
            }
            v
        })
        .collect();
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LittleGroupIrrep {
    pub id: usize,
    /// Block indices where `κ(C_i) = −1`, as a mask.
    pub kappa: u32,
    pub orbit: Vec<u32>,
    /// `A_κ`, sorted group indices.
    pub stabilizer: Vec<usize>,
    /// Exponents of `z` on `stabilizer`, aligned with it.
    pub lambda: Vec<u32>,
    /// `A_κ N`, sorted group indices.
    pub little_group: Vec<usize>,
    pub dim: usize,
    /// `(λ ⊗ κ)(h)` as an exponent of `z`, for `h` in the little group.
    phi: HashMap<usize, u32>,
}

impl LittleGroupIrrep {
    pub fn phi(&self, h: usize) -> Option<u32> {
        self.phi.get(&h).copied()
    }
}

pub fn enumerate_irreps(p: &SemidirectPresentation) -> Vec<LittleGroupIrrep> {
    let g = &p.group;
    let half = p.field_order / 2;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for kappa in p.kappas() {
        if seen.contains(&kappa) {
            continue;
        }
        let orbit: BTreeSet<u32> = p.complement.iter().map(|&a| p.act_on_kappa(a, kappa)).collect();
        seen.extend(orbit.iter().copied());
        let stabilizer: Vec<usize> = p.complement.iter().copied().filter(|&a| p.act_on_kappa(a, kappa) == kappa).collect();
        let mut little_group: Vec<usize> =
            stabilizer.iter().flat_map(|&a| p.normal.iter().map(move |&n| g.mul(a, n))).collect();
        little_group.sort_unstable();
        for lambda in abelian_characters(g, &stabilizer, p.field_order) {
            let mut phi = HashMap::new();
            for (k, &a) in stabilizer.iter().enumerate() {
                for &n in &p.normal {
                    let sign = if p.kappa_is_negative(kappa, n) { half } else { 0 };
                    phi.insert(g.mul(a, n), (lambda[k] + sign) % p.field_order);
                }
            }
            out.push(LittleGroupIrrep {
                id: out.len(),
                kappa,
                orbit: orbit.iter().copied().collect(),
                stabilizer: stabilizer.clone(),
                lambda,
                little_group: little_group.clone(),
                dim: g.order() / little_group.len(),
                phi,
            });
        }
    }
    out
}

/// `(1/|H|) Σ_{x ∈ G, x⁻¹gx ∈ H} φ(x⁻¹gx)`.
pub fn induced_character(p: &SemidirectPresentation, field: &CyclotomicField, rho: &LittleGroupIrrep, g: usize) -> Cyclo {
    let mut acc = field.zero();
    for x in 0..p.group.order() {
        if let Some(e) = rho.phi(p.group.conj(g, x)) {
            acc = field.add(&acc, &field.zeta_pow(e as i64));
        }
    }
    field
        .div_exact(&acc, rho.little_group.len() as i64)
        .expect("the induced character sum is divisible by |H|")
}

/// A monomial matrix: column `j` has the entry `z^{exps[j]}` in row `rows[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialMatrix {
    pub rows: Vec<usize>,
    pub exps: Vec<u32>,
}

/// `Ind_H^G φ` realized on the left cosets `t_1 H, …, t_d H`.
#[derive(Debug, Clone)]
pub struct InducedRepresentation {
    pub transversal: Vec<usize>,
    coset_of: Vec<usize>,
    order: u32,
}

impl InducedRepresentation {
    pub fn new(p: &SemidirectPresentation, rho: &LittleGroupIrrep) -> InducedRepresentation {
        let g = &p.group;
        let mut coset_of = vec![usize::MAX; g.order()];
        let mut transversal = Vec::new();
        for t in 0..g.order() {
            if coset_of[t] != usize::MAX {
                continue;
            }
            for &h in &rho.little_group {
                coset_of[g.mul(t, h)] = transversal.len();
            }
            transversal.push(t);
        }
        InducedRepresentation { transversal, coset_of, order: p.field_order }
    }

    /// `g t_j = t_i h` puts `φ(h)` at `(i, j)`.
    pub fn matrix(&self, p: &SemidirectPresentation, rho: &LittleGroupIrrep, g: usize) -> MonomialMatrix {
        let grp = &p.group;
        let mut rows = Vec::with_capacity(self.transversal.len());
        let mut exps = Vec::with_capacity(self.transversal.len());
        for &t in &self.transversal {
            let gt = grp.mul(g, t);
            let i = self.coset_of[gt];
            let h = grp.mul(grp.inv(self.transversal[i]), gt);
            rows.push(i);
            exps.push(rho.phi(h).expect("t_i⁻¹ g t_j lies in H"));
        }
        MonomialMatrix { rows, exps }
    }

    pub fn compose(&self, a: &MonomialMatrix, b: &MonomialMatrix) -> MonomialMatrix {
        // (AB) e_j = A (z^{b_j} e_{b.rows[j]}) = z^{b_j + a_{b.rows[j]}} e_{a.rows[b.rows[j]]}
        let rows = b.rows.iter().map(|&k| a.rows[k]).collect();
        let exps = b.rows.iter().zip(&b.exps).map(|(&k, &e)| (e + a.exps[k]) % self.order).collect();
        MonomialMatrix { rows, exps }
    }

    pub fn trace(&self, field: &CyclotomicField, m: &MonomialMatrix) -> Cyclo {
        let diag: Vec<Cyclo> =
            (0..m.rows.len()).filter(|&j| m.rows[j] == j).map(|j| field.zeta_pow(m.exps[j] as i64)).collect();
        field.sum(&diag)
    }
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub field: CyclotomicField,
    pub classes: Vec<Vec<usize>>,
    pub irreps: Vec<LittleGroupIrrep>,
    /// `values[irrep][class]`.
    pub values: Vec<Vec<Cyclo>>,
}

impl CharacterTable {
    pub fn class_of(&self, g: usize) -> usize {
        self.classes.iter().position(|c| c.binary_search(&g).is_ok()).expect("every element has a class")
    }

    pub fn value(&self, irrep: usize, g: usize) -> &Cyclo {
        &self.values[irrep][self.class_of(g)]
    }
}

/// The full table; orthogonality and the degree sum are checked before
/// returning.
pub fn character_table(p: &SemidirectPresentation) -> Result<CharacterTable, AnalysisError> {
    let stage = "character table";
    let field = p.field();
    let classes = p.group.conjugacy_classes();
    let irreps = enumerate_irreps(p);
    let order = p.group.order() as i64;
    let dim_sq: usize = irreps.iter().map(|r| r.dim * r.dim).sum();
    if dim_sq != p.group.order() {
        return Err(AnalysisError::inconsistent(stage, "sum of squared degrees", format!("{dim_sq} != {order}")));
    }
    if irreps.len() != classes.len() {
        return Err(AnalysisError::inconsistent(
            stage,
            "irreps = classes",
            format!("{} irreps, {} classes", irreps.len(), classes.len()),
        ));
    }
    let values: Vec<Vec<Cyclo>> =
        irreps.iter().map(|rho| classes.iter().map(|c| induced_character(p, &field, rho, c[0])).collect()).collect();
    for i in 0..irreps.len() {
        for j in 0..irreps.len() {
            let terms: Vec<Cyclo> = classes
                .iter()
                .enumerate()
                .map(|(k, c)| field.scale(&field.mul(&values[i][k], &field.conj(&values[j][k])), c.len() as i64))
                .collect();
            let expected = if i == j { order } else { 0 };
            if field.as_integer(&field.sum(&terms)) != Some(expected) {
                return Err(AnalysisError::inconsistent(stage, "row orthogonality", format!("irreps {i} and {j}")));
            }
        }
    }
    for (k, ck) in classes.iter().enumerate() {
        for (l, _) in classes.iter().enumerate() {
            let terms: Vec<Cyclo> = values.iter().map(|row| field.mul(&row[k], &field.conj(&row[l]))).collect();
            let expected = if k == l { order / ck.len() as i64 } else { 0 };
            if field.as_integer(&field.sum(&terms)) != Some(expected) {
                return Err(AnalysisError::inconsistent(stage, "column orthogonality", format!("classes {k} and {l}")));
            }
        }
    }
    Ok(CharacterTable { field, classes, irreps, values })
}

/// Builds every induced matrix representation and checks, on every group
/// element, that its trace is the induced character and that it is
/// multiplicative against a generating set.
pub fn verify_induced_matrices(p: &SemidirectPresentation, table: &CharacterTable) -> Result<(), AnalysisError> {
    let stage = "induced matrices";
    let g = &p.group;
    let mut gens: Vec<usize> = p.complement.clone();
    gens.extend(&p.normal);
    let gens: Vec<usize> = {
        // a small generating set: greedily keep elements that enlarge the span
        let mut kept = Vec::new();
        let mut span = vec![0];
        for x in gens {
            if span.binary_search(&x).is_err() {
                kept.push(x);
                span = g.generated(&kept);
            }
        }
        kept
    };
    for rho in &table.irreps {
        let ind = InducedRepresentation::new(p, rho);
        let mats: Vec<MonomialMatrix> = (0..g.order()).map(|x| ind.matrix(p, rho, x)).collect();
        for x in 0..g.order() {
            if ind.trace(&table.field, &mats[x]) != *table.value(rho.id, x) {
                return Err(AnalysisError::inconsistent(
                    stage,
                    "trace equals induced character",
                    format!("irrep {} at {}", rho.id, g.element(x)),
                ));
            }
            for &s in &gens {
                if ind.compose(&mats[x], &mats[s]) != mats[g.mul(x, s)] {
                    return Err(AnalysisError::inconsistent(
                        stage,
                        "homomorphism",
                        format!("irrep {} at {} * {}", rho.id, g.element(x), g.element(s)),
                    ));
                }
            }
        }
        if mats[0].rows.iter().enumerate().any(|(j, &i)| i != j) || mats[0].exps.iter().any(|&e| e != 0) {
            return Err(AnalysisError::inconsistent(stage, "identity", format!("irrep {}", rho.id)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::{parse_datum, ParseOptions};
    use crate::fixtures::fixture_json;
    use crate::rgroup::analyze;
    use crate::signed_weyl::generate_subgroup;

    fn sp(r: usize, cycles: &[&[usize]], flips: &[usize]) -> SignedPermutation {
        SignedPermutation::from_cycles(r, cycles, flips).unwrap()
    }

    fn semidirect(r: usize, a_gens: &[SignedPermutation], basis: &[usize]) -> SemidirectPresentation {
        let mut gens = a_gens.to_vec();
        gens.extend(basis.iter().map(|&i| SignedPermutation::sign_change(r, [i]).unwrap()));
        let g = generate_subgroup(r, &gens);
        let a = generate_subgroup(r, a_gens);
        SemidirectPresentation::new(&g, &a, basis).unwrap()
    }

    fn dims(t: &CharacterTable) -> Vec<usize> {
        let mut d: Vec<usize> = t.irreps.iter().map(|r| r.dim).collect();
        d.sort();
        d
    }

    #[test]
    fn z3_semidirect_z2_cubed() {
        let p = semidirect(3, &[sp(3, &[&[1, 2, 3]], &[])], &[0, 1, 2]);
        let t = character_table(&p).unwrap();
        assert_eq!(dims(&t), vec![1, 1, 1, 1, 1, 1, 3, 3]);
        verify_induced_matrices(&p, &t).unwrap();
        // kappa in a size-3 orbit vanishes off N
        let f = &t.field;
        for rho in t.irreps.iter().filter(|r| r.dim == 3) {
            for g in 0..p.group.order() {
                if !p.group.element(g).is_pure_sign_change() {
                    assert!(f.is_zero(&induced_character(&p, f, rho, g)));
                } else {
                    // sum of kappa over its orbit
                    let expected: Vec<Cyclo> = rho
                        .orbit
                        .iter()
                        .map(|&k| if p.kappa_is_negative(k, g) { f.from_int(-1) } else { f.from_int(1) })
                        .collect();
                    assert_eq!(induced_character(&p, f, rho, g), f.sum(&expected));
                }
            }
        }
    }

    #[test]
    fn trivial_complement() {
        let p = semidirect(2, &[], &[0, 1]);
        let t = character_table(&p).unwrap();
        assert_eq!(dims(&t), vec![1, 1, 1, 1]);
    }

    #[test]
    fn direct_product_z2_z2() {
        // A = <C_2> is not allowed to meet N = <C_1>; use (1 2)-free direct product
        let p = semidirect(2, &[sp(2, &[], &[2])], &[0]);
        let t = character_table(&p).unwrap();
        assert_eq!(dims(&t), vec![1, 1, 1, 1]);
        assert_eq!(t.field.order(), 2);
    }

    #[test]
    fn dihedral_swap() {
        let p = semidirect(2, &[sp(2, &[&[1, 2]], &[])], &[0, 1]);
        let t = character_table(&p).unwrap();
        assert_eq!(dims(&t), vec![1, 1, 1, 1, 2]);
        verify_induced_matrices(&p, &t).unwrap();
    }

    #[test]
    fn z2_table() {
        let p = semidirect(1, &[], &[0]);
        let t = character_table(&p).unwrap();
        let f = &t.field;
        let rows: Vec<Vec<Option<i64>>> =
            t.values.iter().map(|r| r.iter().map(|v| f.as_integer(v)).collect()).collect();
        assert_eq!(rows, vec![vec![Some(1), Some(1)], vec![Some(1), Some(-1)]]);
    }

    #[test]
    fn non_abelian_complement_is_unsupported() {
        let s3 = generate_subgroup(3, &[sp(3, &[&[1, 2]], &[]), sp(3, &[&[1, 2, 3]], &[])]);
        assert!(matches!(SemidirectPresentation::new(&s3, &s3, &[]), Err(AnalysisError::Unsupported(_))));
    }

    #[test]
    fn abelian_characters_of_z4_and_klein() {
        let z4 = generate_subgroup(2, &[sp(2, &[&[1, 2]], &[1])]);
        let g = FiniteGroup::new(&z4).unwrap();
        let all: Vec<usize> = (0..g.order()).collect();
        let chars = abelian_characters(&g, &all, 4);
        assert_eq!(chars.len(), 4);
        let distinct: BTreeSet<_> = chars.iter().collect();
        assert_eq!(distinct.len(), 4);
        for c in &chars {
            for a in 0..4 {
                for b in 0..4 {
                    assert_eq!((c[a] + c[b]) % 4, c[g.mul(a, b)]);
                }
            }
        }
    }

    #[test]
    fn fixture_groups() {
        for name in crate::fixtures::FIXTURE_NAMES {
            let d = parse_datum(&fixture_json(name).unwrap(), ParseOptions::default()).unwrap();
            let a = analyze(&d).unwrap();
            let p = SemidirectPresentation::from_analysis(&a).unwrap();
            let t = character_table(&p).unwrap();
            if p.group.order() <= 96 {
                verify_induced_matrices(&p, &t).unwrap();
            }
        }
    }
}

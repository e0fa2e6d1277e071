//! The hyperoctahedral group `W = S_r ⋉ Z_2^r` acting on block indices,
//! on roots of type BC, and (via [`crate::fixed_space`]) on coordinates.
//!
//! An element is stored in the normal form `s·C_B`: first the signs of the
//! indices in `B` are flipped, then the indices are permuted by `s`. As a
//! signed permutation of basis vectors this reads `w(e_i) = ±e_{s(i)}` with a
//! minus sign exactly when `i ∈ B`.
//!
//! Indices are 0-based internally; everything rendered for people (cycle
//! notation, root descriptors) is 1-based.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest rank the bitmask representation of sign sets supports.
pub const MAX_RANK: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("rank {0} exceeds the supported maximum of {MAX_RANK}")]
    RankTooLarge(usize),
    #[error("not a permutation of 0..{0}: {1:?}")]
    NotAPermutation(usize, Vec<usize>),
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("cannot parse root descriptor {0:?}")]
    BadRoot(String),
}

/// An element `s·C_B` of the hyperoctahedral group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: u32,
}

impl SignedPermutation {
    pub fn identity(rank: usize) -> Self {
        assert!(rank <= MAX_RANK, "rank {rank} too large");
        SignedPermutation { perm: (0..rank).collect(), signs: 0 }
    }

    /// Build `s·C_B` from the image vector of `s` (0-based) and the flipped
    /// indices `B` (0-based).
    pub fn new(perm: Vec<usize>, flips: impl IntoIterator<Item = usize>) -> Result<Self, WeylError> {
        let rank = perm.len();
        if rank > MAX_RANK {
            return Err(WeylError::RankTooLarge(rank));
        }
        let mut seen = vec![false; rank];
        for &p in &perm {
            if p >= rank || seen[p] {
                return Err(WeylError::NotAPermutation(rank, perm));
            }
            seen[p] = true;
        }
        let mut signs = 0u32;
        for i in flips {
            if i >= rank {
                return Err(WeylError::IndexOutOfRange { index: i, rank });
            }
            signs |= 1 << i;
        }
        Ok(SignedPermutation { perm, signs })
    }

    /// Build an element from 1-based cycle notation, e.g.
    /// `from_cycles(3, &[&[1, 2, 3]], &[1])` is `(1 2 3)·C{1}`.
    pub fn from_cycles(rank: usize, cycles: &[&[usize]], flips: &[usize]) -> Result<Self, WeylError> {
        let mut perm: Vec<usize> = (0..rank).collect();
        let mut used = vec![false; rank];
        for cycle in cycles {
            for (k, &i) in cycle.iter().enumerate() {
                let j = cycle[(k + 1) % cycle.len()];
                if i == 0 || i > rank || j == 0 || j > rank {
                    return Err(WeylError::IndexOutOfRange { index: i.max(j), rank });
                }
                if used[i - 1] {
                    return Err(WeylError::NotAPermutation(rank, perm));
                }
                used[i - 1] = true;
                perm[i - 1] = j - 1;
            }
        }
        let mut flips0 = Vec::with_capacity(flips.len());
        for &f in flips {
            if f == 0 || f > rank {
                return Err(WeylError::IndexOutOfRange { index: f, rank });
            }
            flips0.push(f - 1);
        }
        SignedPermutation::new(perm, flips0)
    }

    /// The pure sign change `C_B`.
    pub fn sign_change(rank: usize, flips: impl IntoIterator<Item = usize>) -> Result<Self, WeylError> {
        SignedPermutation::new((0..rank).collect(), flips)
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    /// Image vector of the permutation part `s`.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Bitmask of the sign set `B`.
    pub fn sign_mask(&self) -> u32 {
        self.signs
    }

    pub fn flips(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.flips_at(i)).collect()
    }

    pub fn flips_at(&self, i: usize) -> bool {
        self.signs >> i & 1 == 1
    }

    pub fn sign_count(&self) -> usize {
        self.signs.count_ones() as usize
    }

    pub fn is_identity(&self) -> bool {
        self.signs == 0 && self.is_pure_sign_change()
    }

    /// True when `s` is the identity, i.e. the element lies in `Z_2^r`.
    pub fn is_pure_sign_change(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// The permutation part `s` as an element with empty sign set.
    pub fn permutation_part(&self) -> SignedPermutation {
        SignedPermutation { perm: self.perm.clone(), signs: 0 }
    }

    /// The sign part `C_B`.
    pub fn sign_part(&self) -> SignedPermutation {
        SignedPermutation { perm: (0..self.rank()).collect(), signs: self.signs }
    }

    /// `w(e_i) = sign · e_{index}`; the flag is `true` for a minus sign.
    pub fn image(&self, i: usize) -> (usize, bool) {
        (self.perm[i], self.flips_at(i))
    }

    /// `self ∘ other` in normal form. Fails when the ranks differ.
    pub fn compose(&self, other: &SignedPermutation) -> Result<SignedPermutation, WeylError> {
        if self.rank() != other.rank() {
            return Err(WeylError::RankMismatch(self.rank(), other.rank()));
        }
        Ok(self.compose_unchecked(other))
    }

    // (s1 C_B1)(s2 C_B2) = s1 s2 · C_{s2^{-1}(B1) Δ B2}
    fn compose_unchecked(&self, other: &SignedPermutation) -> SignedPermutation {
        let mut perm = Vec::with_capacity(self.rank());
        let mut signs = other.signs;
        for (i, &j) in other.perm.iter().enumerate() {
            perm.push(self.perm[j]);
            if self.flips_at(j) {
                signs ^= 1 << i;
            }
        }
        SignedPermutation { perm, signs }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let mut perm = vec![0; self.rank()];
        let mut signs = 0;
        for (i, &j) in self.perm.iter().enumerate() {
            perm[j] = i;
            if self.flips_at(i) {
                signs |= 1 << j;
            }
        }
        SignedPermutation { perm, signs }
    }

    /// `u · self · u⁻¹`.
    pub fn conjugate_by(&self, u: &SignedPermutation) -> SignedPermutation {
        &(u * self) * &u.inverse()
    }

    /// Disjoint cycles of `s` (fixed points included), each with the number of
    /// flipped signs it carries. Cycles are listed by their smallest index.
    pub fn cycle_decomposition(&self) -> Vec<Cycle> {
        let mut seen = vec![false; self.rank()];
        let mut cycles = Vec::new();
        for start in 0..self.rank() {
            if seen[start] {
                continue;
            }
            let mut indices = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                indices.push(i);
                i = self.perm[i];
            }
            let sign_count = indices.iter().filter(|&&i| self.flips_at(i)).count();
            cycles.push(Cycle { indices, sign_count });
        }
        cycles
    }

    /// `s` consists of a single cycle through all `r` indices.
    pub fn is_full_cycle(&self) -> bool {
        let r = self.rank();
        if r == 0 {
            return false;
        }
        let mut i = self.perm[0];
        let mut len = 1;
        while i != 0 {
            i = self.perm[i];
            len += 1;
        }
        len == r
    }

    pub fn order(&self) -> usize {
        let mut acc = self.clone();
        let mut n = 1;
        while !acc.is_identity() {
            acc = &acc * self;
            n += 1;
        }
        n
    }

    pub fn act_on_root(&self, root: &Root) -> Root {
        let (coeffs, positive) = root.coefficients();
        let mut mapped: Vec<(usize, i8)> = coeffs
            .iter()
            .map(|&(i, c)| {
                let (j, neg) = self.image(i);
                (j, if neg { -c } else { c })
            })
            .collect();
        mapped.sort_unstable();
        let kind = match mapped.as_slice() {
            [(i, c)] => return Root { kind: RootKind::Short(*i), positive: (*c > 0) == positive },
            [(i, ci), (j, cj)] => {
                if ci == cj {
                    (RootKind::Sum(*i, *j), *ci > 0)
                } else {
                    (RootKind::Diff(*i, *j), *ci > 0)
                }
            }
            _ => unreachable!("roots have one or two nonzero coordinates"),
        };
        Root { kind: kind.0, positive: kind.1 == positive }
    }

    /// `w·α > 0` for every `α` in `roots`.
    pub fn is_positive_on<'a>(&self, roots: impl IntoIterator<Item = &'a Root>) -> bool {
        roots.into_iter().all(|a| self.act_on_root(a).positive)
    }
}

impl std::ops::Mul for &SignedPermutation {
    type Output = SignedPermutation;

    /// Panics on rank mismatch; use [`SignedPermutation::compose`] for a checked version.
    fn mul(self, rhs: &SignedPermutation) -> SignedPermutation {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch in composition");
        self.compose_unchecked(rhs)
    }
}

/// Renders `(1 2 3)·C{1}`; the identity renders as `1`.
impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self
            .cycle_decomposition()
            .into_iter()
            .filter(|c| c.indices.len() > 1)
            .collect();
        let flips = self.flips();
        if cycles.is_empty() && flips.is_empty() {
            return f.write_str("1");
        }
        for c in &cycles {
            let body: Vec<String> = c.indices.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        if !flips.is_empty() {
            if !cycles.is_empty() {
                f.write_str("·")?;
            }
            let body: Vec<String> = flips.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "C{{{}}}", body.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    pub indices: Vec<usize>,
    pub sign_count: usize,
}

/// The kind of a root, indexed by block: `e_i − e_j`, `e_i + e_j` (`i < j`)
/// or the short class `e_i` / `2e_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootKind {
    Diff(usize, usize),
    Sum(usize, usize),
    Short(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub kind: RootKind,
    pub positive: bool,
}

impl Root {
    pub fn diff(i: usize, j: usize) -> Root {
        Root::positive_from_pair(i, j, false)
    }

    pub fn sum(i: usize, j: usize) -> Root {
        Root::positive_from_pair(i, j, true)
    }

    pub fn short(i: usize) -> Root {
        Root { kind: RootKind::Short(i), positive: true }
    }

    fn positive_from_pair(i: usize, j: usize, sum: bool) -> Root {
        assert_ne!(i, j, "a root needs two distinct indices");
        let (a, b) = (i.min(j), i.max(j));
        let kind = if sum { RootKind::Sum(a, b) } else { RootKind::Diff(a, b) };
        Root { kind, positive: true }
    }

    pub fn negated(self) -> Root {
        Root { positive: !self.positive, ..self }
    }

    /// The positive root of the pair `±self`.
    pub fn abs(self) -> Root {
        Root { positive: true, ..self }
    }

    pub fn max_index(&self) -> usize {
        match self.kind {
            RootKind::Diff(_, j) | RootKind::Sum(_, j) => j,
            RootKind::Short(i) => i,
        }
    }

    fn coefficients(&self) -> (Vec<(usize, i8)>, bool) {
        let coeffs = match self.kind {
            RootKind::Diff(i, j) => vec![(i, 1), (j, -1)],
            RootKind::Sum(i, j) => vec![(i, 1), (j, 1)],
            RootKind::Short(i) => vec![(i, 1)],
        };
        (coeffs, self.positive)
    }

    /// The reflection `w_α` as an element of `W` of the given rank.
    pub fn reflection(&self, rank: usize) -> SignedPermutation {
        let mut perm: Vec<usize> = (0..rank).collect();
        let mut flips = Vec::new();
        match self.kind {
            RootKind::Diff(i, j) => perm.swap(i, j),
            RootKind::Sum(i, j) => {
                perm.swap(i, j);
                flips.extend([i, j]);
            }
            RootKind::Short(i) => flips.push(i),
        }
        SignedPermutation::new(perm, flips).expect("reflection indices within rank")
    }
}

/// `e1-e2`, `e1+e3`, `short:2`, with a leading `-` for negative roots.
impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.positive { "" } else { "-" };
        match self.kind {
            RootKind::Diff(i, j) => write!(f, "{sign}e{}-e{}", i + 1, j + 1),
            RootKind::Sum(i, j) => write!(f, "{sign}e{}+e{}", i + 1, j + 1),
            RootKind::Short(i) => write!(f, "{sign}short:{}", i + 1),
        }
    }
}

impl FromStr for Root {
    type Err = WeylError;

    /// Parses the positive descriptors `ei-ej`, `ei+ej` (any order of `i`, `j`
    /// for the sum; `i < j` required for the difference) and `short:i`.
    fn from_str(s: &str) -> Result<Root, WeylError> {
        let bad = || WeylError::BadRoot(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let index = |x: &str| -> Result<usize, WeylError> {
            let n: usize = x.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            Ok(n - 1)
        };
        if let Some(rest) = t.strip_prefix("short:") {
            return Ok(Root::short(index(rest)?));
        }
        let body = t.strip_prefix('e').ok_or_else(bad)?;
        let (sum, pos) = match (body.find('+'), body.find('-')) {
            (Some(p), None) => (true, p),
            (None, Some(p)) => (false, p),
            _ => return Err(bad()),
        };
        let i = index(&body[..pos])?;
        let j = index(body[pos + 1..].strip_prefix('e').ok_or_else(bad)?)?;
        if i == j || (!sum && i > j) {
            return Err(bad());
        }
        Ok(if sum { Root::sum(i, j) } else { Root::diff(i, j) })
    }
}

/// All permutations of `0..rank` that only exchange blocks of equal size,
/// in lexicographic order of image vectors.
pub fn admissible_permutations(blocks: &[u32]) -> Vec<Vec<usize>> {
    fn extend(blocks: &[u32], current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let i = current.len();
        if i == blocks.len() {
            out.push(current.clone());
            return;
        }
        for j in 0..blocks.len() {
            if !used[j] && blocks[j] == blocks[i] {
                used[j] = true;
                current.push(j);
                extend(blocks, current, used, out);
                current.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(blocks, &mut Vec::with_capacity(blocks.len()), &mut vec![false; blocks.len()], &mut out);
    out
}

/// The Weyl group `W(M̃)`: block permutations between equal sizes and all
/// sign changes, sorted (identity first).
pub fn weyl_group(blocks: &[u32]) -> Vec<SignedPermutation> {
    let rank = blocks.len();
    assert!(rank <= MAX_RANK, "rank {rank} too large");
    let perms = admissible_permutations(blocks);
    let mut out = Vec::with_capacity(perms.len() << rank);
    for perm in perms {
        for signs in 0..(1u32 << rank) {
            out.push(SignedPermutation { perm: perm.clone(), signs });
        }
    }
    out
}

/// Closure of `generators` under composition, sorted. The identity of the
/// given rank is always included.
pub fn generate_subgroup(rank: usize, generators: &[SignedPermutation]) -> Vec<SignedPermutation> {
    let id = SignedPermutation::identity(rank);
    let mut seen: HashSet<SignedPermutation> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = &x * g;
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let sorted: BTreeSet<_> = seen.into_iter().collect();
    sorted.into_iter().collect()
}

/// Closure check for a finite set of elements: returns a failing pair when
/// the set is not closed under composition.
///
/// A greedy generating set is picked first; the set is closed iff right
/// multiplication by each generator maps it into itself, so the cost is
/// linear in the size of the set times the number of generators.
pub fn find_non_closed_pair(elements: &[SignedPermutation]) -> Option<(SignedPermutation, SignedPermutation)> {
    let first = elements.first()?;
    let set: HashSet<&SignedPermutation> = elements.iter().collect();
    let mut gens: Vec<SignedPermutation> = Vec::new();
    let mut span: HashSet<SignedPermutation> = HashSet::from([SignedPermutation::identity(first.rank())]);
    for e in elements {
        if !span.contains(e) {
            gens.push(e.clone());
            span = generate_subgroup(first.rank(), &gens).into_iter().collect();
            if span.len() > elements.len() {
                break;
            }
        }
    }
    for a in elements {
        for g in &gens {
            if !set.contains(&(a * g)) {
                return Some((a.clone(), g.clone()));
            }
        }
    }
    if !set.contains(&SignedPermutation::identity(first.rank())) {
        return Some((first.clone(), first.inverse()));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(rank: usize, cycles: &[&[usize]], flips: &[usize]) -> SignedPermutation {
        SignedPermutation::from_cycles(rank, cycles, flips).unwrap()
    }

    /// Signed permutation matrix: column i has ±1 in row s(i).
    fn matrix(w: &SignedPermutation) -> Vec<Vec<i32>> {
        let r = w.rank();
        let mut m = vec![vec![0; r]; r];
        for i in 0..r {
            let (j, neg) = w.image(i);
            m[j][i] = if neg { -1 } else { 1 };
        }
        m
    }

    fn matmul(a: &[Vec<i32>], b: &[Vec<i32>]) -> Vec<Vec<i32>> {
        let n = a.len();
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
            .collect()
    }

    #[test]
    fn compose_examples() {
        let id = SignedPermutation::identity(3);
        let c1 = sp(3, &[], &[1]);
        let s = sp(3, &[&[1, 2, 3]], &[]);
        assert_eq!(id.compose(&s).unwrap(), s);
        assert!(c1.compose(&c1).unwrap().is_identity());
        assert_eq!(s.compose(&c1).unwrap(), sp(3, &[&[1, 2, 3]], &[1]));
        assert_eq!(c1.compose(&s).unwrap(), sp(3, &[&[1, 2, 3]], &[3]));
        // matrix oracle for both products
        assert_eq!(matrix(&(&s * &c1)), matmul(&matrix(&s), &matrix(&c1)));
        assert_eq!(matrix(&(&c1 * &s)), matmul(&matrix(&c1), &matrix(&s)));
    }

    #[test]
    fn compose_rejects_rank_mismatch() {
        let a = SignedPermutation::identity(2);
        let b = SignedPermutation::identity(3);
        assert_eq!(a.compose(&b), Err(WeylError::RankMismatch(2, 3)));
    }

    #[test]
    fn composition_matches_matrices_exhaustively() {
        let w = weyl_group(&[1, 1, 1]);
        for a in &w {
            for b in &w {
                assert_eq!(matrix(&(a * b)), matmul(&matrix(a), &matrix(b)));
            }
        }
    }

    #[test]
    fn group_axioms_rank_four() {
        let w = weyl_group(&[1, 1, 1, 1]);
        assert_eq!(w.len(), 384);
        let id = SignedPermutation::identity(4);
        let set: HashSet<_> = w.iter().cloned().collect();
        for a in &w {
            assert_eq!(&(a * &id), a);
            assert_eq!(&(&id * a), a);
            assert!((a * &a.inverse()).is_identity());
            for b in &w {
                assert!(set.contains(&(a * b)));
            }
        }
        // associativity on a stride of triples keeps this test quick
        for a in w.iter().step_by(7) {
            for b in w.iter().step_by(5) {
                for c in w.iter().step_by(3) {
                    assert_eq!(&(a * b) * c, a * &(b * c));
                }
            }
        }
    }

    #[test]
    fn conjugating_sign_changes() {
        for w in weyl_group(&[1, 1, 1, 1]) {
            let s = w.permutation_part();
            let cb = w.sign_part();
            let image: Vec<usize> = cb.flips().iter().map(|&i| s.perm()[i]).collect();
            let expected = SignedPermutation::sign_change(4, image).unwrap();
            assert_eq!(cb.conjugate_by(&s), expected);
            // normal form is s·C_B
            assert_eq!(&s * &cb, w);
        }
    }

    #[test]
    fn cycle_decomposition_examples() {
        let id = SignedPermutation::identity(3);
        let cycles = id.cycle_decomposition();
        assert_eq!(cycles.len(), 3);
        assert!(cycles.iter().all(|c| c.sign_count == 0 && c.indices.len() == 1));

        let w = sp(3, &[&[1, 2, 3]], &[1]);
        assert_eq!(w.cycle_decomposition(), vec![Cycle { indices: vec![0, 1, 2], sign_count: 1 }]);

        let w = sp(3, &[&[1, 2]], &[1, 2, 3]);
        assert_eq!(
            w.cycle_decomposition(),
            vec![Cycle { indices: vec![0, 1], sign_count: 2 }, Cycle { indices: vec![2], sign_count: 1 }]
        );
    }

    #[test]
    fn root_action_examples() {
        let id = SignedPermutation::identity(3);
        for root in [Root::diff(0, 1), Root::sum(0, 2), Root::short(1)] {
            assert_eq!(id.act_on_root(&root), root);
        }
        let c2 = sp(3, &[], &[2]);
        assert_eq!(c2.act_on_root(&Root::short(1)), Root::short(1).negated());

        let t = sp(2, &[&[1, 2]], &[]);
        assert_eq!(t.act_on_root(&Root::diff(0, 1)), Root::diff(0, 1).negated());
    }

    #[test]
    fn positivity_examples() {
        let c1 = sp(3, &[], &[1]);
        assert!(c1.is_positive_on(&[]));
        assert!(!c1.is_positive_on(&[Root::short(0)]));
        // (123)·C{1}: e1 - e2 ↦ -e2 - e3, negative
        let w = sp(3, &[&[1, 2, 3]], &[1]);
        assert_eq!(w.act_on_root(&Root::diff(0, 1)), Root::sum(1, 2).negated());
        assert!(!w.is_positive_on(&[Root::diff(0, 1)]));
        // e2 - e3 ↦ e3 - e1 and e2 + e3 ↦ e1 + e3
        assert!(!w.is_positive_on(&[Root::diff(1, 2)]));
        assert!(w.is_positive_on(&[Root::sum(1, 2)]));
    }

    #[test]
    fn root_action_is_compatible_with_composition() {
        let w = weyl_group(&[1, 1, 1]);
        let mut roots = Vec::new();
        for i in 0..3 {
            roots.push(Root::short(i));
            for j in i + 1..3 {
                roots.push(Root::diff(i, j));
                roots.push(Root::sum(i, j));
            }
        }
        let all: Vec<Root> = roots.iter().flat_map(|&r| [r, r.negated()]).collect();
        for a in &w {
            for b in &w {
                let ab = a * b;
                for root in &all {
                    assert_eq!(ab.act_on_root(root), a.act_on_root(&b.act_on_root(root)));
                }
            }
        }
    }

    #[test]
    fn reflections_negate_their_root() {
        for root in [Root::diff(0, 2), Root::sum(1, 2), Root::short(0)] {
            let refl = root.reflection(3);
            assert_eq!(refl.act_on_root(&root), root.negated());
            assert!((&refl * &refl).is_identity());
        }
    }

    #[test]
    fn root_descriptors_round_trip() {
        for s in ["e1-e2", "e1+e3", "short:2"] {
            let root: Root = s.parse().unwrap();
            assert_eq!(root.to_string(), s);
        }
        assert_eq!("e3+e1".parse::<Root>().unwrap(), Root::sum(0, 2));
        for bad in ["e2-e1", "e1-e1", "short:0", "x1", "e1*e2"] {
            assert!(bad.parse::<Root>().is_err(), "{bad}");
        }
    }

    #[test]
    fn weyl_group_respects_block_sizes() {
        assert_eq!(weyl_group(&[1, 2, 1]).len(), 2 * 8);
        assert_eq!(weyl_group(&[2, 2, 2]).len(), 6 * 8);
        assert_eq!(weyl_group(&[1, 1, 1])[0], SignedPermutation::identity(3));
    }

    #[test]
    fn display_uses_cycle_notation() {
        assert_eq!(sp(3, &[&[1, 2, 3]], &[1]).to_string(), "(1 2 3)·C{1}");
        assert_eq!(sp(3, &[], &[]).to_string(), "1");
        assert_eq!(sp(3, &[], &[1, 3]).to_string(), "C{1,3}");
        assert!(sp(3, &[&[1, 2, 3]], &[]).is_full_cycle());
        assert!(sp(1, &[], &[1]).is_full_cycle());
        assert!(!sp(3, &[&[1, 2]], &[]).is_full_cycle());
    }
}

//! Symbolic block representations: a finite abelian group of twisting
//! characters with an involution `ε`, acting on a finite set of opaque
//! representation labels.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::signed_weyl::SignedPermutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("twist group: {0}")]
    Group(String),
    #[error("unknown twist generator {0:?}")]
    UnknownGenerator(String),
    #[error("cannot parse twist word {0:?}")]
    BadWord(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("{action}: not a bijection of the label set ({detail})")]
    NotBijective { action: String, detail: String },
    #[error("{0}")]
    Relation(String),
}

/// An element of a [`TwistGroup`], stored as a mixed-radix index of its
/// exponent vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Twist(u32);

impl Twist {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// `Z_{o_1} × … × Z_{o_k}` with named generators and an involutive
/// automorphism `ε`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistGroup {
    names: Vec<String>,
    orders: Vec<u32>,
    eps_images: Vec<Vec<u32>>,
}

impl TwistGroup {
    /// The trivial group.
    pub fn trivial() -> TwistGroup {
        TwistGroup { names: Vec::new(), orders: Vec::new(), eps_images: Vec::new() }
    }

    /// A group with `ε` acting trivially.
    pub fn new(generators: Vec<(String, u32)>) -> Result<TwistGroup, LabelError> {
        let k = generators.len();
        let eps = (0..k)
            .map(|g| (0..k).map(|h| u32::from(g == h)).collect())
            .collect();
        TwistGroup::with_eps(generators, eps)
    }

    /// `eps_images[g]` is the exponent vector of `ε(generator g)`.
    pub fn with_eps(generators: Vec<(String, u32)>, eps_images: Vec<Vec<u32>>) -> Result<TwistGroup, LabelError> {
        let mut seen = BTreeSet::new();
        for (name, order) in &generators {
            if *order == 0 {
                return Err(LabelError::Group(format!("generator {name:?} has order 0")));
            }
            if name.is_empty() || name == "1" || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(LabelError::Group(format!("invalid generator name {name:?}")));
            }
            if !seen.insert(name.clone()) {
                return Err(LabelError::Group(format!("duplicate generator {name:?}")));
            }
        }
        let (names, orders): (Vec<String>, Vec<u32>) = generators.into_iter().unzip();
        let total: u64 = orders.iter().map(|&o| o as u64).product();
        if total > 1 << 16 {
            return Err(LabelError::Group(format!("group order {total} too large")));
        }
        if eps_images.len() != names.len() || eps_images.iter().any(|v| v.len() != names.len()) {
            return Err(LabelError::Group("eps image table has the wrong shape".into()));
        }
        let eps_images: Vec<Vec<u32>> = eps_images
            .into_iter()
            .map(|v| v.iter().zip(&orders).map(|(e, o)| e % o).collect())
            .collect();
        let group = TwistGroup { names, orders, eps_images };
        for g in 0..group.names.len() {
            let image = group.from_exponents(&group.eps_images[g]);
            if !group.is_identity(group.pow(image, group.orders[g] as i64)) {
                return Err(LabelError::Group(format!(
                    "eps({}) = {} does not respect the relation {}^{} = 1",
                    group.names[g],
                    group.format(image),
                    group.names[g],
                    group.orders[g]
                )));
            }
        }
        for g in 0..group.names.len() {
            let gen = group.generator(g);
            if group.eps(group.eps(gen)) != gen {
                return Err(LabelError::Group(format!("eps is not an involution on {}", group.names[g])));
            }
        }
        Ok(group)
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.orders.iter().map(|&o| o as usize).product()
    }

    pub fn identity(&self) -> Twist {
        Twist(0)
    }

    pub fn is_identity(&self, t: Twist) -> bool {
        t.0 == 0
    }

    pub fn elements(&self) -> impl Iterator<Item = Twist> {
        (0..self.order() as u32).map(Twist)
    }

    pub fn generator(&self, g: usize) -> Twist {
        let mut e = vec![0; self.names.len()];
        e[g] = 1 % self.orders[g];
        self.from_exponents(&e)
    }

    pub fn exponents(&self, t: Twist) -> Vec<u32> {
        let mut rest = t.0;
        self.orders
            .iter()
            .map(|&o| {
                let e = rest % o;
                rest /= o;
                e
            })
            .collect()
    }

    pub fn from_exponents(&self, exps: &[u32]) -> Twist {
        let mut idx = 0u32;
        for (e, &o) in exps.iter().zip(&self.orders).rev() {
            idx = idx * o + e % o;
        }
        Twist(idx)
    }

    pub fn mul(&self, a: Twist, b: Twist) -> Twist {
        let ea = self.exponents(a);
        let eb = self.exponents(b);
        let e: Vec<u32> = ea.iter().zip(&eb).zip(&self.orders).map(|((x, y), o)| (x + y) % o).collect();
        self.from_exponents(&e)
    }

    pub fn inv(&self, a: Twist) -> Twist {
        let e: Vec<u32> = self.exponents(a).iter().zip(&self.orders).map(|(x, o)| (o - x) % o).collect();
        self.from_exponents(&e)
    }

    pub fn pow(&self, a: Twist, n: i64) -> Twist {
        let e: Vec<u32> = self
            .exponents(a)
            .iter()
            .zip(&self.orders)
            .map(|(&x, &o)| (x as i64 * n).rem_euclid(o as i64) as u32)
            .collect();
        self.from_exponents(&e)
    }

    pub fn element_order(&self, a: Twist) -> usize {
        let mut n = 1;
        let mut acc = a;
        while !self.is_identity(acc) {
            acc = self.mul(acc, a);
            n += 1;
        }
        n
    }

    /// Exponent of the group (lcm of the generator orders).
    pub fn exponent(&self) -> u32 {
        self.orders.iter().fold(1, |acc, &o| lcm(acc, o))
    }

    /// `χ^ε`.
    pub fn eps(&self, a: Twist) -> Twist {
        let ea = self.exponents(a);
        let mut e = vec![0u64; self.names.len()];
        for (g, &k) in ea.iter().enumerate() {
            for (h, &img) in self.eps_images[g].iter().enumerate() {
                e[h] += k as u64 * img as u64;
            }
        }
        let e: Vec<u32> = e.iter().zip(&self.orders).map(|(x, &o)| (x % o as u64) as u32).collect();
        self.from_exponents(&e)
    }

    pub fn eps_is_trivial(&self) -> bool {
        (0..self.names.len()).all(|g| self.eps(self.generator(g)) == self.generator(g))
    }

    /// Parses `1`, `chi`, `chi^2`, `chi^-1`, `chi*eta^3`.
    pub fn parse(&self, word: &str) -> Result<Twist, LabelError> {
        let w: String = word.chars().filter(|c| !c.is_whitespace()).collect();
        if w == "1" {
            return Ok(self.identity());
        }
        if w.is_empty() {
            return Err(LabelError::BadWord(word.to_string()));
        }
        let mut acc = self.identity();
        for factor in w.split('*') {
            let (name, power) = match factor.split_once('^') {
                Some((n, p)) => (n, p.parse::<i64>().map_err(|_| LabelError::BadWord(word.to_string()))?),
                None => (factor, 1),
            };
            if name == "1" {
                continue;
            }
            let g = self
                .names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| LabelError::UnknownGenerator(name.to_string()))?;
            acc = self.mul(acc, self.pow(self.generator(g), power));
        }
        Ok(acc)
    }

    /// Canonical word: generators in declaration order with exponents in
    /// `1..order`, or `1`.
    pub fn format(&self, t: Twist) -> String {
        let parts: Vec<String> = self
            .exponents(t)
            .iter()
            .zip(&self.names)
            .filter(|(e, _)| **e != 0)
            .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn generated_subgroup(&self, gens: &[Twist]) -> Vec<Twist> {
        let mut set = BTreeSet::from([self.identity()]);
        loop {
            let current: Vec<Twist> = set.iter().copied().collect();
            let before = set.len();
            for &a in &current {
                for &g in gens {
                    set.insert(self.mul(a, g));
                }
            }
            if set.len() == before {
                break;
            }
        }
        set.into_iter().collect()
    }

    pub fn is_subgroup(&self, set: &[Twist]) -> bool {
        let s: BTreeSet<Twist> = set.iter().copied().collect();
        s.contains(&self.identity()) && s.iter().all(|&a| s.iter().all(|&b| s.contains(&self.mul(a, b))))
    }

    /// Every subgroup, by brute force over generating pairs; intended for the
    /// small groups of the test corpus.
    pub fn subgroups(&self) -> Vec<Vec<Twist>> {
        let elements: Vec<Twist> = self.elements().collect();
        let mut found: BTreeSet<Vec<Twist>> = BTreeSet::new();
        let mut frontier = vec![vec![self.identity()]];
        found.insert(vec![self.identity()]);
        while let Some(h) = frontier.pop() {
            for &x in &elements {
                if h.contains(&x) {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(x);
                let k = self.generated_subgroup(&gens);
                if found.insert(k.clone()) {
                    frontier.push(k);
                }
            }
        }
        found.into_iter().collect()
    }

    /// Coset representatives of `h` in `g` (both subgroups, `h ⊆ g`), each the
    /// least element of its coset.
    pub fn coset_representatives(&self, g: &[Twist], h: &[Twist]) -> Vec<Twist> {
        let mut covered = BTreeSet::new();
        let mut reps = Vec::new();
        let mut sorted = g.to_vec();
        sorted.sort();
        for &x in &sorted {
            if covered.contains(&x) {
                continue;
            }
            reps.push(x);
            for &y in h {
                covered.insert(self.mul(x, y));
            }
        }
        reps
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepLabel {
    pub id: String,
    pub block_size: u32,
}

/// A finite set of labels with a `TwistGroup` action and an involution `ε`,
/// validated for the group relations and the compatibility
/// `ε(ℓ·χ) = ε(ℓ)·χ^ε`.
#[derive(Debug, Clone)]
pub struct LabelAlgebra {
    group: TwistGroup,
    labels: Vec<RepLabel>,
    index: HashMap<String, usize>,
    eps: Vec<usize>,
    // twist_table[t][ℓ] = ℓ·t
    twist_table: Vec<Vec<usize>>,
}

impl LabelAlgebra {
    /// `generator_actions[g][ℓ]` is the image of label `ℓ` under generator `g`.
    pub fn new(
        group: TwistGroup,
        labels: Vec<RepLabel>,
        generator_actions: Vec<Vec<usize>>,
        eps: Vec<usize>,
    ) -> Result<LabelAlgebra, LabelError> {
        let n = labels.len();
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if l.block_size == 0 {
                return Err(LabelError::Relation(format!("label {:?} has block size 0", l.id)));
            }
            if index.insert(l.id.clone(), i).is_some() {
                return Err(LabelError::DuplicateLabel(l.id.clone()));
            }
        }
        if generator_actions.len() != group.generator_names().len() {
            return Err(LabelError::Relation("one label action is required per twist generator".into()));
        }
        let check_bijection = |name: &str, map: &[usize]| -> Result<(), LabelError> {
            if map.len() != n {
                return Err(LabelError::NotBijective { action: name.into(), detail: "wrong length".into() });
            }
            let mut hit = vec![false; n];
            for (i, &j) in map.iter().enumerate() {
                if j >= n || hit[j] {
                    return Err(LabelError::NotBijective {
                        action: name.into(),
                        detail: format!("{} is hit twice or out of range", labels.get(j).map_or("?", |l| &l.id)),
                    });
                }
                hit[j] = true;
                if labels[i].block_size != labels[j].block_size {
                    return Err(LabelError::Relation(format!(
                        "{name} maps {} (size {}) to {} (size {})",
                        labels[i].id, labels[i].block_size, labels[j].id, labels[j].block_size
                    )));
                }
            }
            Ok(())
        };
        for (g, map) in generator_actions.iter().enumerate() {
            check_bijection(&group.generator_names()[g], map)?;
        }
        check_bijection("eps", &eps)?;

        for (g, map) in generator_actions.iter().enumerate() {
            let name = &group.generator_names()[g];
            let order = group.generator_orders()[g];
            for l in 0..n {
                let mut x = l;
                for _ in 0..order {
                    x = map[x];
                }
                if x != l {
                    return Err(LabelError::Relation(format!(
                        "{name}^{order} does not fix label {}",
                        labels[l].id
                    )));
                }
            }
            for (h, other) in generator_actions.iter().enumerate().skip(g + 1) {
                for l in 0..n {
                    if map[other[l]] != other[map[l]] {
                        return Err(LabelError::Relation(format!(
                            "actions of {name} and {} do not commute on label {}",
                            group.generator_names()[h],
                            labels[l].id
                        )));
                    }
                }
            }
        }
        for l in 0..n {
            if eps[eps[l]] != l {
                return Err(LabelError::Relation(format!("eps is not an involution on label {}", labels[l].id)));
            }
        }

        let mut twist_table = Vec::with_capacity(group.order());
        for t in group.elements() {
            let exps = group.exponents(t);
            let row: Vec<usize> = (0..n)
                .map(|l| {
                    let mut x = l;
                    for (g, &e) in exps.iter().enumerate() {
                        for _ in 0..e {
                            x = generator_actions[g][x];
                        }
                    }
                    x
                })
                .collect();
            twist_table.push(row);
        }
        let algebra = LabelAlgebra { group, labels, index, eps, twist_table };
        for g in 0..algebra.group.generator_names().len() {
            let chi = algebra.group.generator(g);
            let chi_eps = algebra.group.eps(chi);
            for l in 0..n {
                let lhs = algebra.eps_label(algebra.twist_label(l, chi));
                let rhs = algebra.twist_label(algebra.eps_label(l), chi_eps);
                if lhs != rhs {
                    return Err(LabelError::Relation(format!(
                        "eps({}·{}) = {} but eps({})·{} = {}",
                        algebra.labels[l].id,
                        algebra.group.format(chi),
                        algebra.labels[lhs].id,
                        algebra.labels[l].id,
                        algebra.group.format(chi_eps),
                        algebra.labels[rhs].id
                    )));
                }
            }
        }
        Ok(algebra)
    }

    pub fn group(&self) -> &TwistGroup {
        &self.group
    }

    pub fn labels(&self) -> &[RepLabel] {
        &self.labels
    }

    pub fn label_index(&self, id: &str) -> Result<usize, LabelError> {
        self.index.get(id).copied().ok_or_else(|| LabelError::UnknownLabel(id.to_string()))
    }

    pub fn label_id(&self, l: usize) -> &str {
        &self.labels[l].id
    }

    /// `ℓ·χ`.
    pub fn twist_label(&self, l: usize, chi: Twist) -> usize {
        self.twist_table[chi.index()][l]
    }

    /// `ℓ^ε`.
    pub fn eps_label(&self, l: usize) -> usize {
        self.eps[l]
    }

    /// `π·χ`: every component and `τ` twisted by `χ`.
    pub fn twist(&self, t: &PiTuple, chi: Twist) -> PiTuple {
        PiTuple {
            components: t.components.iter().map(|&l| self.twist_label(l, chi)).collect(),
            tau_twist: self.group.mul(t.tau_twist, chi),
            tau: Arc::clone(&t.tau),
        }
    }

    /// `π^w`: slot `i` carries `π_{s(i)}`, with `ε` applied when `i ∈ B`.
    /// This is a right action: `π^{w1 w2} = (π^{w1})^{w2}`.
    pub fn weyl_act(&self, t: &PiTuple, w: &SignedPermutation) -> PiTuple {
        PiTuple {
            components: (0..t.rank())
                .map(|i| {
                    let (j, flip) = w.image(i);
                    let l = t.components[j];
                    if flip {
                        self.eps_label(l)
                    } else {
                        l
                    }
                })
                .collect(),
            tau_twist: t.tau_twist,
            tau: Arc::clone(&t.tau),
        }
    }

    /// Label-by-label equality, with the `τ` twists compared modulo `X(τ)`.
    pub fn tuples_equivalent(&self, a: &PiTuple, b: &PiTuple) -> bool {
        a.components == b.components && a.tau.contains(self.group.mul(self.group.inv(a.tau_twist), b.tau_twist))
    }

    /// `π^w ≃ π·χ`, evaluated without building either tuple.
    pub fn realizes(&self, t: &PiTuple, w: &SignedPermutation, chi: Twist) -> bool {
        if !t.tau.contains(chi) {
            return false;
        }
        let row = &self.twist_table[chi.index()];
        (0..t.rank()).all(|i| {
            let (j, flip) = w.image(i);
            let l = t.components[j];
            let lhs = if flip { self.eps[l] } else { l };
            lhs == row[t.components[i]]
        })
    }

    /// `X(π) = {χ : π·χ ≃ π}`, sorted.
    pub fn stabilizer_x(&self, t: &PiTuple) -> Vec<Twist> {
        self.group.elements().filter(|&chi| self.tuples_equivalent(&self.twist(t, chi), t)).collect()
    }
}

/// The opaque `τ` label: its stabilizer `X(τ)` and two flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauData {
    pub x_tau: Vec<Twist>,
    pub generic: bool,
    pub mult_one: bool,
}

impl TauData {
    pub fn contains(&self, chi: Twist) -> bool {
        self.x_tau.binary_search(&chi).is_ok()
    }
}

/// `π ≃ π_1 ⊗ … ⊗ π_r ⊗ τ` as label indices, plus the twist carried by `τ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiTuple {
    pub components: Vec<usize>,
    pub tau_twist: Twist,
    pub tau: Arc<TauData>,
}

impl PiTuple {
    pub fn new(components: Vec<usize>, mut tau: TauData) -> PiTuple {
        tau.x_tau.sort();
        tau.x_tau.dedup();
        PiTuple { components, tau_twist: Twist(0), tau: Arc::new(tau) }
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

//! The real model of `𝔞_M`: each block `i` carries `a_i = x_i + i·y_i`,
//! subject to `Σ n_i y_i = 0`. A permutation moves the pairs and a sign
//! change sends `a ↦ −ā`, i.e. `(x, y) ↦ (−x, y)`.

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::AnalysisError;
use crate::signed_weyl::SignedPermutation;

pub type Vector = Vec<Rational64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateModel {
    pub blocks: Vec<u32>,
}

/// A nonzero fixed vector together with how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedWitness {
    pub construction: WitnessKind,
    /// Coordinates `(x_1, y_1, …, x_r, y_r)`.
    pub vector: Vector,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// Imaginary parts `N_2` on one orbit and `−N_1` on another, where
    /// `N_k = Σ_{i ∈ O_k} n_i`.
    TwoOrbits,
    /// One orbit with an even number of sign changes: real parts `±λ`
    /// propagated along the cycle.
    EvenCycle,
}

impl CoordinateModel {
    pub fn new(blocks: Vec<u32>) -> CoordinateModel {
        CoordinateModel { blocks }
    }

    pub fn rank(&self) -> usize {
        self.blocks.len()
    }

    pub fn dimension(&self) -> usize {
        2 * self.rank() - 1
    }

    /// `w·v`: the pair at `i` moves to `s(i)`, with `x` negated when `i ∈ B`.
    pub fn act(&self, w: &SignedPermutation, v: &[Rational64]) -> Vector {
        let mut out = vec![Rational64::zero(); v.len()];
        for i in 0..self.rank() {
            let (j, flip) = w.image(i);
            out[2 * j] = if flip { -v[2 * i] } else { v[2 * i] };
            out[2 * j + 1] = v[2 * i + 1];
        }
        out
    }

    pub fn satisfies_constraint(&self, v: &[Rational64]) -> bool {
        self.constraint_row().iter().zip(v).map(|(a, b)| a * b).sum::<Rational64>().is_zero()
    }

    fn constraint_row(&self) -> Vector {
        let mut row = vec![Rational64::zero(); 2 * self.rank()];
        for (i, &n) in self.blocks.iter().enumerate() {
            row[2 * i + 1] = Rational64::from_integer(n as i64);
        }
        row
    }

    /// Matrix of `v ↦ w·v` on the `2r` coordinates.
    pub fn action_matrix(&self, w: &SignedPermutation) -> Vec<Vector> {
        let d = 2 * self.rank();
        let mut m = vec![vec![Rational64::zero(); d]; d];
        for col in 0..d {
            let mut e = vec![Rational64::zero(); d];
            e[col] = Rational64::one();
            for (row, value) in self.act(w, &e).into_iter().enumerate() {
                m[row][col] = value;
            }
        }
        m
    }

    /// `dim 𝔞_w` by exact row reduction of `[M − I; constraint]`.
    pub fn fixed_space_dim(&self, w: &SignedPermutation) -> usize {
        let mut rows = self.action_matrix(w);
        for (k, row) in rows.iter_mut().enumerate() {
            row[k] -= Rational64::one();
        }
        rows.push(self.constraint_row());
        2 * self.rank() - matrix_rank(rows)
    }

    /// `#cycles − 1 + #cycles with an even number of sign changes`.
    pub fn fixed_space_dim_by_cycles(&self, w: &SignedPermutation) -> usize {
        let cycles = w.cycle_decomposition();
        cycles.len() - 1 + cycles.iter().filter(|c| c.sign_count % 2 == 0).count()
    }

    pub fn is_regular(&self, w: &SignedPermutation) -> bool {
        self.fixed_space_dim(w) == 0
    }

    /// `s` an `r`-cycle and `|B|` odd.
    pub fn is_regular_closed_form(w: &SignedPermutation) -> bool {
        w.is_full_cycle() && w.sign_count() % 2 == 1
    }

    /// A nonzero element of `𝔞_w` built directly from the cycle structure, or
    /// `None` when `w` is regular. The result is verified before returning.
    pub fn fixed_vector(&self, w: &SignedPermutation) -> Option<FixedWitness> {
        let r = self.rank();
        let cycles = w.cycle_decomposition();
        let mut v = vec![Rational64::zero(); 2 * r];
        let construction = if cycles.len() >= 2 {
            let weight = |k: usize| cycles[k].indices.iter().map(|&i| self.blocks[i] as i64).sum::<i64>();
            let (n1, n2) = (weight(0), weight(1));
            for &i in &cycles[0].indices {
                v[2 * i + 1] = Rational64::from_integer(n2);
            }
            for &i in &cycles[1].indices {
                v[2 * i + 1] = Rational64::from_integer(-n1);
            }
            WitnessKind::TwoOrbits
        } else if cycles[0].sign_count.is_multiple_of(2) {
            let mut i = 0;
            let mut x = Rational64::one();
            for _ in 0..r {
                v[2 * i] = x;
                let (j, flip) = w.image(i);
                if flip {
                    x = -x;
                }
                i = j;
            }
            WitnessKind::EvenCycle
        } else {
            return None;
        };
        debug_assert!(self.act(w, &v) == v && self.satisfies_constraint(&v));
        Some(FixedWitness { construction, vector: v })
    }

    /// Checks that `v` is a nonzero element of `𝔞_w`.
    pub fn verify_fixed(&self, w: &SignedPermutation, v: &[Rational64]) -> bool {
        v.iter().any(|c| !c.is_zero()) && self.act(w, v) == v && self.satisfies_constraint(v)
    }
}

/// Rank over `Q` by Gaussian elimination.
pub fn matrix_rank(mut rows: Vec<Vector>) -> usize {
    let Some(cols) = rows.first().map(|r| r.len()) else {
        return 0;
    };
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank][col];
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col] / p;
                for c in col..cols {
                    let delta = rows[rank][c] * f;
                    rows[r][c] -= delta;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// `R(σ)_reg`, sorted. Both the linear-algebra test and the closed form are
/// evaluated; a disagreement is an error.
pub fn regular_set(model: &CoordinateModel, elements: &[SignedPermutation]) -> Result<Vec<SignedPermutation>, AnalysisError> {
    let mut out = Vec::new();
    for w in elements {
        let by_rank = model.is_regular(w);
        if by_rank != CoordinateModel::is_regular_closed_form(w) {
            return Err(AnalysisError::inconsistent(
                "regular set",
                "fixed-space dimension against r-cycle with |B| odd",
                format!("{w}: dim = {}", model.fixed_space_dim(w)),
            ));
        }
        if by_rank {
            out.push(w.clone());
        }
    }
    Ok(out)
}

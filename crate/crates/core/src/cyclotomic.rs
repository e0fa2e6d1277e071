//! Exact arithmetic in `Z[ζ_N]`. Elements are integer coefficient vectors in
//! the basis `1, z, …, z^{φ(N)−1}` where `z = e^{2πi/N}`, reduced modulo the
//! cyclotomic polynomial `Φ_N`, so equal numbers have equal vectors.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclo(Vec<i64>);

impl Cyclo {
    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicField {
    order: u32,
    degree: usize,
    /// `z^k` reduced, for `0 ≤ k < N`.
    powers: Vec<Vec<i64>>,
}

/// `Φ_n` as a coefficient vector, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // x^n − 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = divide_exact(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    let mut quot = vec![0i64; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd] / lead;
        quot[k] = c;
        for (j, &dc) in den.iter().enumerate() {
            rem[k + j] -= c * dc;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

impl CyclotomicField {
    pub fn new(order: u32) -> CyclotomicField {
        assert!(order >= 1);
        let phi = cyclotomic_polynomial(order);
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut current = vec![0i64; degree];
        current[0] = 1;
        for _ in 0..order {
            powers.push(current.clone());
            // multiply by z and reduce
            let mut next = vec![0i64; degree + 1];
            next[1..=degree].copy_from_slice(&current);
            let top = next[degree];
            if top != 0 {
                for j in 0..degree {
                    next[j] -= top * phi[j];
                }
            }
            next.truncate(degree);
            current = next;
        }
        CyclotomicField { order, degree, powers }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn zero(&self) -> Cyclo {
        Cyclo(vec![0; self.degree])
    }

    pub fn from_int(&self, n: i64) -> Cyclo {
        let mut v = vec![0; self.degree];
        v[0] = n;
        Cyclo(v)
    }

    /// `z^k` for any integer `k`.
    pub fn zeta_pow(&self, k: i64) -> Cyclo {
        Cyclo(self.powers[k.rem_euclid(self.order as i64) as usize].clone())
    }

    pub fn add(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        Cyclo(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        Cyclo(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &Cyclo) -> Cyclo {
        Cyclo(a.0.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, a: &Cyclo, n: i64) -> Cyclo {
        Cyclo(a.0.iter().map(|x| x * n).collect())
    }

    fn accumulate(&self, acc: &mut [i64], power: usize, c: i64) {
        if c != 0 {
            for (a, p) in acc.iter_mut().zip(&self.powers[power % self.order as usize]) {
                *a += c * p;
            }
        }
    }

    pub fn mul(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        let mut acc = vec![0; self.degree];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                self.accumulate(&mut acc, i + j, x * y);
            }
        }
        Cyclo(acc)
    }

    /// Complex conjugation `z ↦ z^{−1}`.
    pub fn conj(&self, a: &Cyclo) -> Cyclo {
        let n = self.order as usize;
        let mut acc = vec![0; self.degree];
        for (k, &c) in a.0.iter().enumerate() {
            self.accumulate(&mut acc, (n - k % n) % n, c);
        }
        Cyclo(acc)
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a Cyclo>) -> Cyclo {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    pub fn is_zero(&self, a: &Cyclo) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    /// The rational integer `a` equals, if it is one.
    pub fn as_integer(&self, a: &Cyclo) -> Option<i64> {
        a.0[1..].iter().all(|&c| c == 0).then_some(a.0[0])
    }

    /// `a / n` when every coefficient is divisible by `n`.
    pub fn div_exact(&self, a: &Cyclo, n: i64) -> Option<Cyclo> {
        a.0.iter().all(|&c| c % n == 0).then(|| Cyclo(a.0.iter().map(|c| c / n).collect()))
    }

    pub fn format(&self, a: &Cyclo) -> String {
        let mut terms = Vec::new();
        for (k, &c) in a.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            let abs = c.abs();
            let body = if mono.is_empty() {
                abs.to_string()
            } else if abs == 1 {
                mono
            } else {
                format!("{abs}{mono}")
            };
            terms.push((c < 0, body));
        }
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (neg, body)) in terms.into_iter().enumerate() {
            match (idx, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in [2u32, 3, 4, 6, 10, 12, 14] {
            let f = CyclotomicField::new(n);
            let all: Vec<Cyclo> = (0..n as i64).map(|k| f.zeta_pow(k)).collect();
            assert!(f.is_zero(&f.sum(&all)), "{n}");
            assert_eq!(f.zeta_pow(n as i64), f.from_int(1));
            if n % 2 == 0 {
                assert_eq!(f.zeta_pow(n as i64 / 2), f.from_int(-1));
            }
        }
    }

    #[test]
    fn conj_and_norm() {
        let f = CyclotomicField::new(6);
        let z = f.zeta_pow(1);
        assert_eq!(f.mul(&z, &f.conj(&z)), f.from_int(1));
        // |1 + z|^2 = 3 for z a primitive 6th root
        let w = f.add(&f.from_int(1), &z);
        assert_eq!(f.as_integer(&f.mul(&w, &f.conj(&w))), Some(3));
    }

    #[test]
    fn formatting() {
        let f = CyclotomicField::new(3);
        assert_eq!(f.format(&f.zero()), "0");
        assert_eq!(f.format(&f.from_int(-3)), "-3");
        assert_eq!(f.format(&f.zeta_pow(2)), "-1 - z");
        assert_eq!(f.format(&f.scale(&f.zeta_pow(1), 2)), "2z");
    }

    #[test]
    fn exact_division() {
        let f = CyclotomicField::new(4);
        let a = f.scale(&f.add(&f.from_int(1), &f.zeta_pow(1)), 8);
        assert_eq!(f.div_exact(&a, 8), Some(f.add(&f.from_int(1), &f.zeta_pow(1))));
        assert_eq!(f.div_exact(&f.from_int(3), 2), None);
    }

    proptest! {
        #[test]
        fn powers_multiply(n in prop::sample::select(vec![2u32, 3, 4, 5, 6, 8, 10, 12]), a in -30i64..30, b in -30i64..30) {
            let f = CyclotomicField::new(n);
            prop_assert_eq!(f.mul(&f.zeta_pow(a), &f.zeta_pow(b)), f.zeta_pow(a + b));
            prop_assert_eq!(f.conj(&f.zeta_pow(a)), f.zeta_pow(-a));
        }

        #[test]
        fn ring_laws(n in prop::sample::select(vec![2u32, 3, 4, 6, 10]), xs in prop::collection::vec(-3i64..4, 12)) {
            let f = CyclotomicField::new(n);
            let mk = |s: &[i64]| f.sum(&s.iter().enumerate().map(|(k, &c)| f.scale(&f.zeta_pow(k as i64), c)).collect::<Vec<_>>());
            let (a, b, c) = (mk(&xs[0..4]), mk(&xs[4..8]), mk(&xs[8..12]));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.conj(&f.mul(&a, &b)), f.mul(&f.conj(&a), &f.conj(&b)));
        }
    }
}

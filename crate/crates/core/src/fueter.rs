//! Fueter variables, symmetric products, and finite-difference Cauchy-Fueter operators.

use crate::error::{Error, Result};
use crate::quatlin::{QuatMatrix, Quaternion};

/// Largest number of factors accepted by [`symmetric_product`].
pub const MAX_FACTORS: usize = 8;

/// Default central-difference step.
pub const DEFAULT_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    pub nu1: usize,
    pub nu2: usize,
    pub nu3: usize,
}

impl MultiIndex {
    pub fn new(nu1: usize, nu2: usize, nu3: usize) -> Self {
        MultiIndex { nu1, nu2, nu3 }
    }

    pub fn order(&self) -> usize {
        self.nu1 + self.nu2 + self.nu3
    }

    pub fn factorial(&self) -> u64 {
        factorial(self.nu1) * factorial(self.nu2) * factorial(self.nu3)
    }

    /// All multi-indices with `|nu| = m`.
    pub fn of_order(m: usize) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for a in 0..=m {
            for b in 0..=m - a {
                out.push(MultiIndex::new(a, b, m - a - b));
            }
        }
        out
    }

    /// `m! / nu!`.
    pub fn multinomial(&self) -> u64 {
        factorial(self.order()) / self.factorial()
    }

    /// The factor list `nu1` copies of `a1`, then `nu2` of `a2`, then `nu3` of `a3`.
    pub fn expand<T: Copy>(&self, a1: T, a2: T, a3: T) -> Vec<T> {
        let mut v = vec![a1; self.nu1];
        v.extend(std::iter::repeat_n(a2, self.nu2));
        v.extend(std::iter::repeat_n(a3, self.nu3));
        v
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `zeta_j(x) = x_j - e_j x0`.
pub fn fueter_variable(j: usize, x: Quaternion) -> Quaternion {
    assert!((1..=3).contains(&j), "Fueter variable index must be 1, 2 or 3");
    Quaternion::real(x.component(j)) - Quaternion::unit(j) * x.x0
}

/// Average of the ordered products over all permutations of the factors.
pub fn symmetric_product(factors: &[Quaternion]) -> Result<Quaternion> {
    let n = factors.len();
    if n > MAX_FACTORS {
        return Err(Error::TooManyFactors(n));
    }
    if n == 0 {
        return Ok(Quaternion::ONE);
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let product = |p: &[usize]| p.iter().fold(Quaternion::ONE, |acc, &i| acc * factors[i]);
    let mut sum = product(&perm);
    let mut count = 1u64;
    // Heap's algorithm
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sum += product(&perm);
            count += 1;
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(sum / count as f64)
}

/// Symmetric product of `nu1` copies of `zeta_1(x)`, `nu2` of `zeta_2(x)`, `nu3` of `zeta_3(x)`.
pub fn zeta_power(nu: MultiIndex, x: Quaternion) -> Result<Quaternion> {
    let factors = nu.expand(fueter_variable(1, x), fueter_variable(2, x), fueter_variable(3, x));
    symmetric_product(&factors)
}

fn partials<F>(f: &F, x: Quaternion, h: f64) -> [QuatMatrix; 4]
where
    F: Fn(Quaternion) -> QuatMatrix,
{
    let step = |j: usize, s: f64| {
        let mut c: [f64; 4] = x.into();
        c[j] += s;
        Quaternion::from(c)
    };
    std::array::from_fn(|j| (&f(step(j, h)) - &f(step(j, -h))).scale(0.5 / h))
}

/// `D f = d0 f + e1 d1 f + e2 d2 f + e3 d3 f`, units acting on the left, by central differences.
pub fn apply_d_fd<F>(f: F, x: Quaternion, h: f64) -> QuatMatrix
where
    F: Fn(Quaternion) -> QuatMatrix,
{
    let [d0, d1, d2, d3] = partials(&f, x, h);
    let mut out = d0;
    out += &d1.left_scale(Quaternion::E1);
    out += &d2.left_scale(Quaternion::E2);
    out += &d3.left_scale(Quaternion::E3);
    out
}

/// `Dbar f = d0 f - e1 d1 f - e2 d2 f - e3 d3 f`, units on the left.
pub fn apply_dbar_fd<F>(f: F, x: Quaternion, h: f64) -> QuatMatrix
where
    F: Fn(Quaternion) -> QuatMatrix,
{
    let [d0, d1, d2, d3] = partials(&f, x, h);
    let mut out = d0;
    out -= &d1.left_scale(Quaternion::E1);
    out -= &d2.left_scale(Quaternion::E2);
    out -= &d3.left_scale(Quaternion::E3);
    out
}

/// `f Dbar = d0 f - (d1 f) e1 - (d2 f) e2 - (d3 f) e3`, units on the right.
pub fn apply_dbar_right_fd<F>(f: F, x: Quaternion, h: f64) -> QuatMatrix
where
    F: Fn(Quaternion) -> QuatMatrix,
{
    let [d0, d1, d2, d3] = partials(&f, x, h);
    let mut out = d0;
    out -= &d1.right_scale(Quaternion::E1);
    out -= &d2.right_scale(Quaternion::E2);
    out -= &d3.right_scale(Quaternion::E3);
    out
}

/// Lift a quaternion-valued function to a 1x1 matrix-valued one.
pub fn scalar_fn(f: impl Fn(Quaternion) -> Quaternion) -> impl Fn(Quaternion) -> QuatMatrix {
    move |x| QuatMatrix::scalar(f(x))
}

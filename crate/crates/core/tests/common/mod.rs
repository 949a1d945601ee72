#![allow(dead_code)]

use cpair_core::algebra::{int, Monomial, Poly, RatFun, Rational, RfMatrix};
use cpair_core::exterior::multi::index_tuples;
use cpair_core::exterior::{Form, MetricField, Space, SpaceRef, VectorField};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn chart3() -> SpaceRef {
    Space::chart(["a", "b", "c"]).unwrap()
}

/// Random polynomial with up to `terms` terms and small exponents.
pub fn poly(r: &mut ChaCha8Rng, n: usize, terms: usize, max_exp: u32) -> RatFun {
    let mut p = Poly::zero();
    for _ in 0..r.random_range(0..=terms) {
        let e: Vec<u32> = (0..n).map(|_| r.random_range(0..=max_exp)).collect();
        let c = Rational::from_integer(r.random_range(-3i64..=3).into());
        p = &p + &Poly::monomial(c, Monomial::from_exponents(e));
    }
    RatFun::from_poly(p)
}

pub fn form(r: &mut ChaCha8Rng, s: &SpaceRef, degree: usize) -> Form {
    let terms: Vec<(Vec<usize>, RatFun)> = index_tuples(s.dim(), degree).into_iter().map(|t| (t, poly(r, s.dim(), 3, 2))).collect();
    Form::from_terms(s, degree, terms).unwrap()
}

pub fn field(r: &mut ChaCha8Rng, s: &SpaceRef) -> VectorField {
    VectorField::new(s, (0..s.dim()).map(|_| poly(r, s.dim(), 2, 2)).collect()).unwrap()
}

/// Field with affine coefficients.
pub fn affine_field(r: &mut ChaCha8Rng, s: &SpaceRef) -> VectorField {
    VectorField::new(s, (0..s.dim()).map(|_| &poly(r, s.dim(), 1, 1) + &poly(r, s.dim(), 1, 0)).collect()).unwrap()
}

/// Constant field on a Lie frame.
pub fn constant_field(r: &mut ChaCha8Rng, s: &SpaceRef) -> VectorField {
    VectorField::new(s, (0..s.dim()).map(|_| RatFun::from_int(r.random_range(-3..=3))).collect()).unwrap()
}

/// Constant symmetric positive definite `MᵀM + I` with small integer `M`.
pub fn spd(r: &mut ChaCha8Rng, n: usize) -> RfMatrix {
    let m = RfMatrix::from_fn(n, n, |_, _| RatFun::from_int(r.random_range(-2..=2)));
    &(&m.transpose() * &m) + &RfMatrix::identity(n)
}

pub fn spd_metric(r: &mut ChaCha8Rng, s: &SpaceRef) -> MetricField {
    MetricField::new(s, spd(r, s.dim())).unwrap()
}

/// Symmetric polynomial metric, positive definite near the origin.
pub fn chart_metric(r: &mut ChaCha8Rng, s: &SpaceRef) -> MetricField {
    let n = s.dim();
    loop {
        let mut rows: Vec<Vec<RatFun>> = (0..n).map(|a| RfMatrix::identity(n).row(a)).collect();
        for a in 0..n {
            rows[a][a] = &rows[a][a] + &poly(r, n, 1, 1).pow(2);
            for b in a + 1..n {
                let p = poly(r, n, 1, 1);
                rows[a][b] = p.clone();
                rows[b][a] = p;
            }
        }
        if let Ok(g) = MetricField::new(s, RfMatrix::from_rows(rows)) {
            return g;
        }
    }
}

/// Random 2-step nilpotent frame: `dω^k` for the last `n - m` covectors are
/// combinations of `ω^i∧ω^j` with `i < j < m`, the first `m` are closed.
pub fn nilpotent_frame(r: &mut ChaCha8Rng, n: usize, m: usize) -> SpaceRef {
    let names: Vec<String> = (1..=n).map(|i| format!("w{i}")).collect();
    let mut diffs = vec![Vec::new(); n];
    for d in diffs.iter_mut().skip(m) {
        for i in 0..m {
            for j in i + 1..m {
                let c = r.random_range(-2i64..=2);
                if c != 0 {
                    d.push((i, j, int(c)));
                }
            }
        }
    }
    Space::lie_from_differentials(names, &diffs).unwrap()
}

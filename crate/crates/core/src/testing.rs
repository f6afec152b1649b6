//! Seeded generators of random inputs for property checks: polynomials,
//! rational functions, fields, tensors, connections and involutions.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{Connection, Tensor11Field, Tensor12Field, VectorField};
use crate::numfield::QuadScalar;
use crate::symexpr::{Chart, Monomial, Poly, RatFunc};

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn small_int(&mut self) -> i64 {
        let v = self.rng.gen_range(1..=4);
        if self.rng.gen_bool(0.5) {
            -v
        } else {
            v
        }
    }

    /// A random polynomial in the first `nvars` variables with total degree at
    /// most `degree` and at most four terms.
    pub fn poly(&mut self, nvars: usize, degree: u32) -> Poly {
        let terms = self.rng.gen_range(1..=4);
        let mut p = Poly::zero();
        for _ in 0..terms {
            let mut exps = vec![0u32; nvars];
            let mut budget = self.rng.gen_range(0..=degree);
            while budget > 0 {
                let v = self.rng.gen_range(0..nvars);
                exps[v] += 1;
                budget -= 1;
            }
            let c = QuadScalar::from_int(self.small_int());
            p = p.add(&Poly::monomial(Monomial::new(exps), c));
        }
        p
    }

    pub fn polyf(&mut self, chart: &Chart, degree: u32) -> RatFunc {
        RatFunc::from_poly(self.poly(chart.dim(), degree))
    }

    /// `p / (1 + q²)`: a random rational function without real poles.
    pub fn rational(&mut self, chart: &Chart) -> RatFunc {
        let p = self.poly(chart.dim(), 2);
        let q = self.poly(chart.dim(), 1);
        let den = Poly::one().add(&q.mul(&q));
        RatFunc::new(p, den).expect("positive denominator")
    }

    pub fn poly_field(&mut self, chart: &Chart, degree: u32) -> VectorField {
        let comps = (0..chart.dim()).map(|_| self.polyf(chart, degree)).collect();
        VectorField::new(chart.clone(), comps).expect("sized")
    }

    pub fn rational_field(&mut self, chart: &Chart) -> VectorField {
        let comps = (0..chart.dim()).map(|_| self.rational(chart)).collect();
        VectorField::new(chart.clone(), comps).expect("sized")
    }

    pub fn poly_t11(&mut self, chart: &Chart, degree: u32) -> Tensor11Field {
        let n = chart.dim();
        let comps = (0..n * n).map(|_| self.polyf(chart, degree)).collect();
        Tensor11Field::new(chart.clone(), comps).expect("sized")
    }

    pub fn poly_t12(&mut self, chart: &Chart, degree: u32) -> Tensor12Field {
        let n = chart.dim();
        let comps = (0..n * n * n).map(|_| self.polyf(chart, degree)).collect();
        Tensor12Field::new(chart.clone(), comps).expect("sized")
    }

    /// A connection with sparse polynomial coefficients of degree ≤ `degree`.
    pub fn connection(&mut self, chart: &Chart, degree: u32) -> Connection {
        let n = chart.dim();
        let comps: Vec<RatFunc> = (0..n * n * n)
            .map(|_| {
                if self.rng.gen_bool(0.5) {
                    self.polyf(chart, degree)
                } else {
                    RatFunc::zero()
                }
            })
            .collect();
        Connection::new(chart.clone(), comps).expect("sized")
    }

    /// Unit lower-triangular times unit upper-triangular matrix with entries of
    /// degree ≤ `degree`: invertible with a polynomial inverse.
    pub fn unimodular(&mut self, chart: &Chart, degree: u32) -> Tensor11Field {
        let n = chart.dim();
        let mut l = Tensor11Field::identity(chart).components().to_vec();
        let mut u = Tensor11Field::identity(chart).components().to_vec();
        for h in 0..n {
            for i in 0..n {
                if h > i {
                    l[h * n + i] = self.polyf(chart, degree);
                } else if h < i {
                    u[h * n + i] = self.polyf(chart, degree);
                }
            }
        }
        let l = Tensor11Field::new(chart.clone(), l).expect("sized");
        let u = Tensor11Field::new(chart.clone(), u).expect("sized");
        l.compose(&u).expect("same chart")
    }

    /// `B · diag(±1) · B⁻¹` for a random unimodular `B` with entries of degree
    /// ≤ `degree` (constant involutions for `degree = 0`). Both eigenvalues
    /// occur whenever the dimension allows.
    pub fn involution(&mut self, chart: &Chart, degree: u32) -> Tensor11Field {
        let n = chart.dim();
        let b = self.unimodular(chart, degree);
        let binv = b.inverse().expect("unimodular");
        let mut signs: Vec<i64> = (0..n).map(|k| if k % 2 == 0 { 1 } else { -1 }).collect();
        if n > 1 {
            let plus = self.rng.gen_range(1..n);
            signs = (0..n).map(|k| if k < plus { 1 } else { -1 }).collect();
            signs.shuffle(&mut self.rng);
        }
        let d = Tensor11Field::from_fn(chart, |h, i| {
            if h == i {
                RatFunc::int(signs[h])
            } else {
                RatFunc::zero()
            }
        });
        b.compose(&d).and_then(|bd| bd.compose(&binv)).expect("same chart")
    }

    pub fn point(&mut self, dim: usize) -> Vec<f64> {
        (0..dim).map(|_| self.rng.gen_range(-2.0..2.0)).collect()
    }
}

//! Randomized property suites, seeded from `GBS_SEED` (default 0).

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{rat, Field, FieldElem, Valuation};
use crate::enumerate::{realize_csa, BsPoint};
use crate::filtration::{AlgebraFiltration, FieldFiltration, Filt};
use crate::glider::{classify_subglider, Glider, TailRule, TrivialityVerdict};
use crate::lattice::{linalg, Algebra, BaseRing, Lattice, Vector};

pub fn seed_from_env() -> u64 {
    std::env::var("GBS_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(0)
}

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteResult {
    fn new(name: &str) -> SuiteResult {
        SuiteResult { name: name.into(), cases: 0, failures: 0, first_failure: None }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn small_rat(rng: &mut ChaCha8Rng, field: &Field, primes: &[i64]) -> FieldElem {
    let n = rng.gen_range(-12..=12);
    let mut d = 1;
    for p in primes {
        d *= p.pow(rng.gen_range(0..=1));
    }
    field.from_rat(rat(n, d))
}

/// Bases alternate between `ℤ_(5)` and `ℤ_(2),(3)`.
pub fn random_base(rng: &mut ChaCha8Rng) -> (BaseRing, Vec<i64>) {
    if rng.gen_bool(0.5) {
        (BaseRing::padic(5), vec![5])
    } else {
        let vals = vec![Valuation::padic(2).unwrap(), Valuation::padic(3).unwrap()];
        (BaseRing::new(Field::Q, vals).unwrap(), vec![2, 3])
    }
}

pub fn random_vector(rng: &mut ChaCha8Rng, base: &BaseRing, primes: &[i64], dim: usize) -> Vector {
    (0..dim).map(|_| small_rat(rng, &base.field, primes)).collect()
}

/// A full lattice spanned by `dim` to `dim + 2` random vectors.
pub fn random_lattice(rng: &mut ChaCha8Rng, base: &BaseRing, primes: &[i64], dim: usize) -> Lattice {
    loop {
        let k = rng.gen_range(dim..=dim + 2);
        let l = Lattice::span(base, dim, (0..k).map(|_| random_vector(rng, base, primes, dim)));
        if l.is_full() {
            return l;
        }
    }
}

fn alg2() -> Algebra {
    Algebra::matrix(Field::Q, 2)
}

pub fn suite_associativity(seed: u64, cases: usize) -> SuiteResult {
    let mut r = rng(seed, 1);
    let mut out = SuiteResult::new("lattice product associativity");
    let a = alg2();
    for _ in 0..cases {
        let (b, ps) = random_base(&mut r);
        let (x, y, z) = (random_lattice(&mut r, &b, &ps, 4), random_lattice(&mut r, &b, &ps, 4), random_lattice(&mut r, &b, &ps, 4));
        let ok = x.mult(&y, &a).mult(&z, &a) == x.mult(&y.mult(&z, &a), &a);
        out.record(ok, || format!("(XY)Z ≠ X(YZ) for X = {x}, Y = {y}, Z = {z}"));
    }
    out
}

/// `C = (X : Y)` satisfies `C·Y ⊆ X`, and no `c/π` beyond a basis vector `c` of `C` does.
pub fn suite_colon(seed: u64, cases: usize) -> SuiteResult {
    let mut r = rng(seed, 2);
    let mut out = SuiteResult::new("colon maximality");
    let a = alg2();
    for _ in 0..cases {
        let (b, ps) = random_base(&mut r);
        let (x, y) = (random_lattice(&mut r, &b, &ps, 4), random_lattice(&mut r, &b, &ps, 4));
        let left = r.gen_bool(0.5);
        let c = if left { x.colon_left(&y, &a) } else { x.colon_right(&y, &a) };
        let Ok(c) = c else {
            out.record(false, || format!("colon failed for X = {x}, Y = {y}"));
            continue;
        };
        let acts = |u: &Vector| {
            y.rows.iter().all(|v| x.contains_vec(&if left { a.mul(u, v) } else { a.mul(v, u) }))
        };
        let mut ok = c.rows.iter().all(|u| acts(u));
        for u in &c.rows {
            for pi in &b.unis {
                let bigger = linalg::scale_vec(&pi.inv(), u);
                ok &= !acts(&bigger);
            }
        }
        out.record(ok, || format!("colon not maximal for X = {x}, Y = {y}, left = {left}"));
    }
    out
}

/// `ℓ(X/Z) = ℓ(X/Y) + ℓ(Y/Z)` for `Z ⊆ Y ⊆ X`.
pub fn suite_length(seed: u64, cases: usize) -> SuiteResult {
    let mut r = rng(seed, 3);
    let mut out = SuiteResult::new("length additivity");
    for _ in 0..cases {
        let (b, ps) = random_base(&mut r);
        let x = random_lattice(&mut r, &b, &ps, 4);
        let y = x.intersect(&random_lattice(&mut r, &b, &ps, 4));
        let z = y.intersect(&random_lattice(&mut r, &b, &ps, 4));
        let l = |p: &Lattice, q: &Lattice| p.quotient_length(q).ok();
        let ok = match (l(&x, &z), l(&x, &y), l(&y, &z)) {
            (Some(a), Some(c), Some(d)) => a == c + d && z.is_sub(&y) && y.is_sub(&x),
            _ => false,
        };
        out.record(ok, || format!("lengths not additive for X = {x}, Y = {y}, Z = {z}"));
    }
    out
}

/// Respanning shuffled rows plus redundant combinations reproduces the canonical rows.
pub fn suite_canonical(seed: u64, cases: usize) -> SuiteResult {
    let mut r = rng(seed, 4);
    let mut out = SuiteResult::new("canonical form idempotence");
    for _ in 0..cases {
        let (b, ps) = random_base(&mut r);
        let dim = r.gen_range(1..=4);
        let l = random_lattice(&mut r, &b, &ps, dim);
        let mut gens = l.rows.clone();
        for _ in 0..2 {
            let mut v = linalg::zeros(&b.field, dim);
            for row in &l.rows {
                linalg::axpy(&mut v, &b.field.int(r.gen_range(-3..=3)), row);
            }
            gens.push(v);
        }
        gens.shuffle(&mut r);
        let again = Lattice::span(&b, dim, gens);
        let ok = again == l && Lattice::span(&b, dim, l.rows.clone()) == l;
        out.record(ok, || format!("canonical form moved: {l} vs {again}"));
    }
    out
}

/// `M_2(ℚ)` with the 5-adic induced filtration.
pub fn m2_filtration() -> Arc<Filt> {
    Arc::new(Filt::Algebra(AlgebraFiltration::matrix(FieldFiltration::padic(5), 2)))
}

pub fn random_point(rng: &mut ChaCha8Rng, field: &Field, n: usize) -> BsPoint {
    loop {
        let c: Vec<FieldElem> = (0..n).map(|_| field.int(rng.gen_range(-4..=4))).collect();
        if let Ok(p) = BsPoint::new(c) {
            return p;
        }
    }
}

/// Levelwise sums of one to three realized gliders, optionally enlarged at degree 0
/// by an `F_0A`-submodule; presented with a filtration tail after degree 2.
pub fn random_glider(rng: &mut ChaCha8Rng, filt: &Arc<Filt>) -> Glider {
    let a = filt.alg();
    let n = a.n().unwrap_or(1);
    let parts: Vec<Glider> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let p = random_point(rng, &filt.base().field, n);
            realize_csa(filt.clone(), &p, rng.gen_range(-2..=2)).shift(rng.gen_range(0..=2)).unwrap()
        })
        .collect();
    let mut prefix: Vec<Lattice> =
        (0..=2).map(|j| parts.iter().skip(1).fold(parts[0].level(j), |acc, g| acc.add(&g.level(j)))).collect();
    if rng.gen_bool(0.5) {
        let u = random_vector(rng, filt.base(), &[5], a.dim);
        let bu = Lattice::span(filt.base(), a.dim, filt.level(0).rows.iter().map(|b| a.mul(b, &u)));
        prefix[0] = prefix[0].add(&bu);
    }
    Glider::new(filt.clone(), prefix, TailRule::FiltrationTail)
}

/// `classify_subglider(M, M)` is T3 with `α = id`.
pub fn suite_self_subglider(seed: u64, cases: usize) -> SuiteResult {
    let mut r = rng(seed, 5);
    let mut out = SuiteResult::new("self subglider is T3(identity)");
    let f = m2_filtration();
    for _ in 0..cases {
        let m = random_glider(&mut r, &f);
        let v = classify_subglider(&m, &m);
        let ok = matches!(&v, Ok(TrivialityVerdict::TrivialT3 { alpha }) if alpha.iter().enumerate().all(|(k, a)| *a == k as i64));
        out.record(ok, || format!("got {v:?} for prefix {:?}", m.prefix.iter().map(|l| l.to_string()).collect::<Vec<_>>()));
    }
    out
}

pub fn lattice_suites(seed: u64, cases: usize) -> Vec<SuiteResult> {
    vec![
        suite_associativity(seed, cases),
        suite_colon(seed, cases),
        suite_length(seed, cases),
        suite_canonical(seed, cases),
    ]
}

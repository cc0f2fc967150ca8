//! Counting and enumerating self-dual double circulant codes.
//!
//! Three independent routes are provided: the closed-form count read off the
//! factor profile of x^n - 1, a constructive CRT enumeration that picks a
//! self-dual constituent at every irreducible factor and glues them back
//! together, and a brute-force scan of all `q^n` first rows. The module also
//! carries the single-length audit of how many codes can contain a given
//! word, the q-ary entropy function and its inverse, and census sweeps over
//! ranges of `n`.

use std::collections::BTreeSet;
use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::double_circulant::{Codeword, DoubleCirculantCode};
use crate::error::{Error, Result};
use crate::finite_field::{gcd, FieldSpec};
use crate::polyring::{
    artin_condition, factor_profile, factor_xn_minus_1, poly_mulmod, FactorProfile, Poly,
    XnFactorization,
};

/// Default cap on `q^n` for [`brute_force_enumerate`].
pub const DEFAULT_BRUTE_FORCE_BUDGET: u128 = 1 << 22;
/// Default cap on `q^{3n}` for [`lemma7_audit`].
pub const DEFAULT_AUDIT_BUDGET: u128 = 1 << 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountBranch {
    /// -1 is not a square: no self-dual code exists.
    NoSquareRoot,
    /// `4 prod_{j>=3} (1 + q^{d_j}) prod (q^{e_j} - 1)`.
    OddQEvenN,
    /// `2 prod_{j>=2} (1 + q^{d_j}) prod (q^{e_j} - 1)`.
    OddQOddN,
    /// `prod_{j>=2} (1 + q^{d_j}) prod (q^{e_j} - 1)`.
    EvenQOddN,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub n: usize,
    pub q: FieldSpec,
    pub exists: bool,
    #[serde(rename = "count")]
    pub formula_count: u128,
    pub branch: CountBranch,
    /// x^n - 1 = (x - 1) h(x) with h irreducible.
    pub two_factor: bool,
    pub factor_summary: FactorProfile,
}

fn checked_pow(q: u128, e: usize) -> Result<u128> {
    q.checked_pow(e as u32).ok_or(Error::Overflow)
}

/// The self-reciprocal and pair products shared by every branch.
pub fn profile_product(q: u64, profile: &FactorProfile) -> Result<u128> {
    let q = q as u128;
    let mut acc: u128 = 1;
    for &d in &profile.d {
        acc = acc
            .checked_mul(checked_pow(q, d)?.checked_add(1).ok_or(Error::Overflow)?)
            .ok_or(Error::Overflow)?;
    }
    for &e in &profile.e {
        acc = acc
            .checked_mul(checked_pow(q, e)? - 1)
            .ok_or(Error::Overflow)?;
    }
    Ok(acc)
}

/// Closed-form number of self-dual double circulant codes of length `2n`.
pub fn count_formula(n: usize, field: &FieldSpec) -> Result<CountReport> {
    if n == 0 {
        return Err(Error::LengthTooSmall { n, min: 1 });
    }
    if gcd(n as u64, field.p() as u64) != 1 {
        return Err(Error::NotCoprime { n, q: field.q() });
    }
    let q = field.q() as u64;
    let profile = factor_profile(n, q)?;
    let two_factor = n % 2 == 1 && profile.s == 2 && profile.t == 0;
    let (branch, count) = if !field.minus_one_is_square() {
        (CountBranch::NoSquareRoot, 0)
    } else {
        let core = profile_product(q, &profile)?;
        match (field.is_even(), n % 2 == 0) {
            (true, true) => return Err(Error::Unsupported("q even with n even".into())),
            (true, false) => (CountBranch::EvenQOddN, core),
            (false, false) => (
                CountBranch::OddQOddN,
                core.checked_mul(2).ok_or(Error::Overflow)?,
            ),
            (false, true) => (
                CountBranch::OddQEvenN,
                core.checked_mul(4).ok_or(Error::Overflow)?,
            ),
        }
    };
    Ok(CountReport {
        n,
        q: field.clone(),
        exists: branch != CountBranch::NoSquareRoot,
        formula_count: count,
        branch,
        two_factor,
        factor_summary: profile,
    })
}

/// Every `a` of degree `< n` giving a self-dual code, in ascending index order.
pub fn brute_force_enumerate(n: usize, field: &FieldSpec) -> Result<Vec<Poly>> {
    brute_force_enumerate_with_budget(n, field, DEFAULT_BRUTE_FORCE_BUDGET)
}

pub fn brute_force_enumerate_with_budget(
    n: usize,
    field: &FieldSpec,
    budget: u128,
) -> Result<Vec<Poly>> {
    if n == 0 {
        return Err(Error::LengthTooSmall { n, min: 1 });
    }
    if gcd(n as u64, field.p() as u64) != 1 {
        return Err(Error::NotCoprime { n, q: field.q() });
    }
    let total = (field.q() as u128)
        .checked_pow(n as u32)
        .unwrap_or(u128::MAX);
    if total > budget {
        return Err(Error::BudgetExceeded {
            work: total,
            budget,
        });
    }
    let found = (0..total as u64)
        .into_par_iter()
        .filter_map(|idx| {
            let a = Poly::from_index(field, idx as u128);
            let code = DoubleCirculantCode::new(field, n, a).expect("degree < n");
            code.is_self_dual().then(|| code.a().clone())
        })
        .collect();
    Ok(found)
}

/// One self-dual constituent per irreducible factor of x^n - 1.
///
/// Residues are values of `a` at roots of unity: `linear[k]` is `a(1)` (and
/// `a(-1)` for even n) in GF(q), `hermitian[j]` is `a(root^c)` for the
/// self-reciprocal factor with coset minimum `c`, and `pairs[j]` is
/// `a(root^c)` for the member `h_j` of each reciprocal pair. The last two are
/// reps in the splitting field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ConstituentChoice {
    pub linear: Vec<u32>,
    pub hermitian: Vec<u32>,
    pub pairs: Vec<u32>,
}

struct HermitianSlot {
    coset: Vec<usize>,
    /// All `b` in GF(q^{2d}) with `b^{1+q^d} = -1`.
    solutions: Vec<u32>,
}

struct PairSlot {
    coset: Vec<usize>,
    star_coset: Vec<usize>,
    /// Nonzero elements of GF(q^e).
    units: Vec<u32>,
}

/// Constructive enumeration of self-dual double circulant codes through the
/// CRT decomposition of GF(q)[x]/(x^n - 1).
pub struct CrtEnumerator {
    n: usize,
    field: FieldSpec,
    factorization: XnFactorization,
    linear: Vec<Vec<u32>>,
    hermitian: Vec<HermitianSlot>,
    pairs: Vec<PairSlot>,
}

impl CrtEnumerator {
    pub fn new(n: usize, field: &FieldSpec) -> Result<CrtEnumerator> {
        if !field.minus_one_is_square() {
            return Err(Error::MinusOneNotSquare { q: field.q() });
        }
        let factorization = factor_xn_minus_1(n, field)?;
        let big = &factorization.splitting.field;
        let q = field.q() as u64;

        // roots of z^2 = -1 in GF(q); just 1 in characteristic two
        let minus_one = field.neg(1);
        let roots: Vec<u32> = field
            .elements()
            .filter(|&z| field.mul(z, z) == minus_one)
            .collect();
        let linear = vec![roots; if n % 2 == 0 { 2 } else { 1 }];

        let hermitian = factorization
            .self_reciprocal
            .iter()
            .filter(|g| g.half_degree > 0)
            .map(|g| {
                let d = g.half_degree;
                let r = q.pow(d as u32);
                // b = w^i, w generating GF(q^{2d})^*; b^{1+r} = -1 forces
                // i = 0 mod (r-1) for q even and i = (r-1)/2 mod (r-1) for q odd
                let w = big.subfield_generator(field.m() * 2 * d as u32);
                let (offset, step) = if field.is_even() {
                    (0, r - 1)
                } else {
                    ((r - 1) / 2, r - 1)
                };
                let lw = big.log(w) as u64;
                let solutions = (0..=r).map(|j| big.exp(lw * (offset + step * j))).collect();
                HermitianSlot {
                    coset: g.coset.clone(),
                    solutions,
                }
            })
            .collect();

        let pairs = factorization
            .pairs
            .iter()
            .map(|p| {
                let size = q.pow(p.degree as u32) - 1;
                let w = big.subfield_generator(field.m() * p.degree as u32);
                let lw = big.log(w) as u64;
                let units = (0..size).map(|i| big.exp(lw * i)).collect();
                PairSlot {
                    coset: p.coset.clone(),
                    star_coset: p.star_coset.clone(),
                    units,
                }
            })
            .collect();

        Ok(CrtEnumerator {
            n,
            field: field.clone(),
            factorization,
            linear,
            hermitian,
            pairs,
        })
    }

    pub fn factorization(&self) -> &XnFactorization {
        &self.factorization
    }

    /// Number of choices at each slot: linear factors, then self-reciprocal
    /// factors, then pairs.
    pub fn radices(&self) -> Vec<u128> {
        self.linear
            .iter()
            .map(|l| l.len() as u128)
            .chain(self.hermitian.iter().map(|h| h.solutions.len() as u128))
            .chain(self.pairs.iter().map(|p| p.units.len() as u128))
            .collect()
    }

    /// Total number of constituent tuples.
    pub fn len(&self) -> u128 {
        self.radices().iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The tuple at mixed-radix position `index` (last slot least significant).
    pub fn choice_at(&self, mut index: u128) -> ConstituentChoice {
        let radices = self.radices();
        let mut digits = vec![0usize; radices.len()];
        for (d, &r) in digits.iter_mut().zip(&radices).rev() {
            *d = (index % r) as usize;
            index /= r;
        }
        let (lin, rest) = digits.split_at(self.linear.len());
        let (her, pr) = rest.split_at(self.hermitian.len());
        ConstituentChoice {
            linear: lin
                .iter()
                .zip(&self.linear)
                .map(|(&i, opts)| opts[i])
                .collect(),
            hermitian: her
                .iter()
                .zip(&self.hermitian)
                .map(|(&i, h)| h.solutions[i])
                .collect(),
            pairs: pr
                .iter()
                .zip(&self.pairs)
                .map(|(&i, p)| p.units[i])
                .collect(),
        }
    }

    /// Glues the residues into `a(x)`: the values of `a` at every n-th root of
    /// unity follow from the choice by Frobenius, and the inverse discrete
    /// Fourier transform recovers the coefficients.
    pub fn poly_for(&self, choice: &ConstituentChoice) -> Result<Poly> {
        let split = &self.factorization.splitting;
        let big = &split.field;
        let n = self.n;
        let q = self.field.q() as u64;
        let mut values = vec![u32::MAX; n];

        let spread = |coset: &[usize], b: u32, values: &mut Vec<u32>| {
            let (mut c, mut v) = (coset[0], b);
            for _ in 0..coset.len() {
                values[c] = v;
                c = (c as u128 * q as u128 % n as u128) as usize;
                v = big.pow_sqm(v, q);
            }
        };

        values[0] = split.embedding.map(choice.linear[0]);
        if n % 2 == 0 {
            values[n / 2] = split.embedding.map(choice.linear[1]);
        }
        for (slot, &b) in self.hermitian.iter().zip(&choice.hermitian) {
            spread(&slot.coset, b, &mut values);
        }
        for (slot, &u) in self.pairs.iter().zip(&choice.pairs) {
            spread(&slot.coset, u, &mut values);
            let partner = big.neg(big.inv(u)?);
            // -c lies in the star coset; start the orbit there
            let mut star = slot.star_coset.clone();
            let neg_c = (n - slot.coset[0]) % n;
            star.retain(|&x| x != neg_c);
            star.insert(0, neg_c);
            spread(&star, partner, &mut values);
        }
        debug_assert!(values.iter().all(|&v| v != u32::MAX));

        let n_inv = big.inv(big.from_int(n as i64))?;
        let log_root = big.log(split.root) as u64;
        let order = n as u64;
        let coeffs = (0..n)
            .map(|k| {
                let sum = values.iter().enumerate().fold(0, |acc, (i, &v)| {
                    let e = (order - (i as u64 * k as u64) % order) % order;
                    big.add(acc, big.mul(v, big.exp(log_root * e)))
                });
                let c = big.mul(sum, n_inv);
                split
                    .embedding
                    .pull_back(c)
                    .ok_or_else(|| Error::Unsupported("CRT coefficient outside GF(q)".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Poly::new(&self.field, coeffs)
    }

    pub fn poly_at(&self, index: u128) -> Result<Poly> {
        self.poly_for(&self.choice_at(index))
    }
}

/// All self-dual double circulant codes of length `2n`, by CRT construction,
/// in ascending index order.
pub fn crt_enumerate(n: usize, field: &FieldSpec) -> Result<Vec<Poly>> {
    let en = CrtEnumerator::new(n, field)?;
    let total = en.len();
    let mut out = (0..total as u64)
        .into_par_iter()
        .map(|i| en.poly_at(i as u128))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// Number of `a` coprime with x^n - 1 such that `u` lies in `C_a`.
pub fn codes_containing(n: usize, field: &FieldSpec, u: &Codeword) -> Result<usize> {
    let xn = Poly::xn_minus_one(field, n);
    let total = (field.q() as u128).pow(n as u32);
    let mut count = 0;
    for idx in 0..total {
        let a = Poly::from_index(field, idx);
        if a.gcd(&xn)?.degree() != Some(0) {
            continue;
        }
        if DoubleCirculantCode::new(field, n, a)?.contains(u)? {
            count += 1;
        }
    }
    Ok(count)
}

/// `v` is a scalar multiple of the all-ones vector.
fn is_constant_vector(v: &[u32]) -> bool {
    v.iter().all(|&c| c == v[0])
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma7Report {
    pub n: usize,
    pub q: FieldSpec,
    pub words: u128,
    pub candidates: u128,
    pub coprime_candidates: u128,
    /// Bound on codes per non-constant word, `q - 1`.
    pub bound: u64,
    pub max_nonconstant_count: u64,
    pub violations: u64,
    pub constant_words: u64,
    pub max_constant_count: u64,
}

impl Lemma7Report {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.max_nonconstant_count <= self.bound
    }
}

/// For every word `u = (v | w)` of length `2n`, counts the `a` coprime with
/// x^n - 1 whose code contains `u`, and checks the non-constant words against
/// the `q - 1` bound. A word is constant when both halves are multiples of the
/// all-ones vector.
pub fn lemma7_audit(n: usize, field: &FieldSpec) -> Result<Lemma7Report> {
    lemma7_audit_with_budget(n, field, DEFAULT_AUDIT_BUDGET)
}

pub fn lemma7_audit_with_budget(n: usize, field: &FieldSpec, budget: u128) -> Result<Lemma7Report> {
    let flags = artin_condition(field.q() as u64, n)?;
    if !flags.two_factor {
        return Err(Error::NotTwoFactor { n, q: field.q() });
    }
    let q = field.q() as u128;
    let half = q.pow(n as u32);
    let work = half.checked_pow(3).unwrap_or(u128::MAX);
    if work > budget {
        return Err(Error::BudgetExceeded { work, budget });
    }
    let xn = Poly::xn_minus_one(field, n);
    let coprime: Vec<Poly> = (0..half)
        .map(|i| Poly::from_index(field, i))
        .filter(|a| a.gcd(&xn).map(|g| g.degree() == Some(0)).unwrap_or(false))
        .collect();

    // counts[v * q^n + w]
    let half_us = half as usize;
    let counts = coprime
        .par_iter()
        .map(|a| {
            let mut local = vec![0u32; half_us * half_us];
            for vi in 0..half {
                let v = Poly::from_index(field, vi);
                let w = poly_mulmod(a, &v, n).expect("same field");
                local[vi as usize * half_us + w.index() as usize] += 1;
            }
            local
        })
        .reduce(
            || vec![0u32; half_us * half_us],
            |mut x, y| {
                x.iter_mut().zip(y).for_each(|(a, b)| *a += b);
                x
            },
        );

    let bound = field.q() as u64 - 1;
    let (mut max_nc, mut violations, mut const_words, mut max_c) = (0u64, 0u64, 0u64, 0u64);
    for vi in 0..half_us {
        let v_const = is_constant_vector(&Poly::from_index(field, vi as u128).dense(n));
        for wi in 0..half_us {
            let c = counts[vi * half_us + wi] as u64;
            let w_const =
                v_const && is_constant_vector(&Poly::from_index(field, wi as u128).dense(n));
            if w_const {
                const_words += 1;
                max_c = max_c.max(c);
            } else {
                max_nc = max_nc.max(c);
                if c > bound {
                    violations += 1;
                }
            }
        }
    }
    Ok(Lemma7Report {
        n,
        q: field.clone(),
        words: half * half,
        candidates: half,
        coprime_candidates: coprime.len() as u128,
        bound,
        max_nonconstant_count: max_nc,
        violations,
        constant_words: const_words,
        max_constant_count: max_c,
    })
}

fn check_q(q: u64) -> Result<()> {
    if q < 2 {
        return Err(Error::OutOfDomain {
            value: q as f64,
            domain: "q >= 2".into(),
        });
    }
    Ok(())
}

/// `H_q(x) = x log_q(q-1) - x log_q x - (1-x) log_q(1-x)` on `[0, (q-1)/q]`.
pub fn entropy_q(q: u64, x: f64) -> Result<f64> {
    check_q(q)?;
    let top = (q - 1) as f64 / q as f64;
    if !(0.0..=top).contains(&x) {
        return Err(Error::OutOfDomain {
            value: x,
            domain: format!("[0, {top}]"),
        });
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let lq = (q as f64).ln();
    let xlogx = |t: f64| if t == 0.0 { 0.0 } else { t * t.ln() };
    Ok((x * ((q - 1) as f64).ln() - xlogx(x) - xlogx(1.0 - x)) / lq)
}

/// The `x` in `[0, (q-1)/q]` with `H_q(x) = y`, by bisection to 1e-12.
pub fn inv_entropy_q(q: u64, y: f64) -> Result<f64> {
    check_q(q)?;
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::OutOfDomain {
            value: y,
            domain: "[0, 1]".into(),
        });
    }
    let top = (q - 1) as f64 / q as f64;
    if y == 0.0 {
        return Ok(0.0);
    }
    if y == 1.0 {
        return Ok(top);
    }
    let (mut lo, mut hi) = (0.0f64, top);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if entropy_q(q, mid)? < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `H_q^{-1}(1/4)`.
pub fn gv_quarter(q: u64) -> Result<f64> {
    inv_entropy_q(q, 0.25)
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    /// Codes examined per length; larger counts are sampled.
    pub sample_size: usize,
    pub seed: u64,
    /// Per-code distance budget on `q^n`.
    pub budget: u128,
    /// Record wall-clock milliseconds per row (breaks byte-for-byte
    /// reproducibility of the output).
    pub timing: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            sample_size: 64,
            seed: 0,
            budget: 1 << 22,
            timing: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    pub n: usize,
    pub q: String,
    pub artin_prime: Option<bool>,
    pub artin_primitive: Option<bool>,
    pub two_factor: Option<bool>,
    pub exists: Option<bool>,
    pub count: Option<u128>,
    pub examined: u64,
    pub d_best: Option<usize>,
    pub delta: Option<f64>,
    pub gv_delta: Option<f64>,
    pub ms: Option<u128>,
    pub error: Option<String>,
}

impl CensusRow {
    /// Rate of every double circulant code.
    pub const RATE: f64 = 0.5;

    fn empty(n: usize, field: &FieldSpec) -> CensusRow {
        CensusRow {
            n,
            q: field.to_string(),
            artin_prime: None,
            artin_primitive: None,
            two_factor: None,
            exists: None,
            count: None,
            examined: 0,
            d_best: None,
            delta: None,
            gv_delta: None,
            ms: None,
            error: None,
        }
    }
}

/// Distinct sorted indices in `[0, total)`, `k` of them, from a seeded stream.
pub fn sample_indices(total: u128, k: usize, seed: u64, stream: u64) -> Vec<u128> {
    if total <= k as u128 {
        return (0..total).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut picked = BTreeSet::new();
    while picked.len() < k {
        picked.insert(rng.gen_range(0..total));
    }
    picked.into_iter().collect()
}

fn census_row(field: &FieldSpec, n: usize, opts: &CensusOptions) -> CensusRow {
    let start = Instant::now();
    let mut row = CensusRow::empty(n, field);
    let q = field.q() as u64;
    row.gv_delta = gv_quarter(q).ok().map(round12);
    let result: Result<()> = (|| {
        let flags = artin_condition(q, n)?;
        row.artin_prime = Some(flags.n_prime);
        row.artin_primitive = Some(flags.primitive);
        row.two_factor = Some(flags.two_factor);
        let count = count_formula(n, field)?;
        row.exists = Some(count.exists);
        row.count = Some(count.formula_count);
        if !count.exists {
            return Ok(());
        }
        let en = CrtEnumerator::new(n, field)?;
        let picks = sample_indices(en.len(), opts.sample_size, opts.seed, n as u64);
        let codes = picks
            .iter()
            .map(|&i| DoubleCirculantCode::new(field, n, en.poly_at(i)?))
            .collect::<Result<Vec<_>>>()?;
        row.examined = codes.len() as u64;
        let mut best = 0;
        for c in &codes {
            best = best.max(c.min_distance_with_budget(opts.budget)?);
        }
        row.d_best = Some(best);
        row.delta = Some(round12(best as f64 / (2 * n) as f64));
        Ok(())
    })();
    if let Err(e) = result {
        row.error = Some(e.to_string());
    }
    if opts.timing {
        row.ms = Some(start.elapsed().as_millis());
    }
    row
}

/// One row per `n`, in ascending order. Row failures are recorded in the
/// row's `error` field.
pub fn census_run(field: &FieldSpec, ns: &[usize], opts: &CensusOptions) -> Vec<CensusRow> {
    let mut ns: Vec<usize> = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    ns.into_iter().map(|n| census_row(field, n, opts)).collect()
}

/// Rounds to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

pub const CENSUS_COLUMNS: [&str; 13] = [
    "n",
    "q",
    "artin_prime",
    "artin_primitive",
    "two_factor",
    "exists",
    "count",
    "examined",
    "d_best",
    "delta",
    "gv_delta",
    "ms",
    "error",
];

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

pub fn write_census_csv<W: Write>(rows: &[CensusRow], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CENSUS_COLUMNS)?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.q.clone(),
            opt(&r.artin_prime),
            opt(&r.artin_primitive),
            opt(&r.two_factor),
            opt(&r.exists),
            opt(&r.count),
            r.examined.to_string(),
            opt(&r.d_best),
            opt(&r.delta),
            opt(&r.gv_delta),
            opt(&r.ms),
            opt(&r.error),
        ])?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::make_field;
    use std::collections::HashSet;

    fn gf(p: u64, m: u32) -> FieldSpec {
        make_field(p, m).unwrap()
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_formula(3, &gf(2, 1)).unwrap().formula_count, 3);
        assert_eq!(count_formula(3, &gf(5, 1)).unwrap().formula_count, 12);
        assert_eq!(count_formula(15, &gf(2, 1)).unwrap().formula_count, 225);
        let r = count_formula(5, &gf(3, 1)).unwrap();
        assert!(!r.exists);
        assert_eq!((r.formula_count, r.branch), (0, CountBranch::NoSquareRoot));
        assert!(matches!(
            count_formula(4, &gf(2, 1)),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn two_factor_case_reduces_to_closed_form() {
        for (p, m) in [(2u64, 1u32), (5, 1), (13, 1), (2, 3), (3, 2)] {
            let f = gf(p, m);
            for n in (3..40).step_by(2) {
                let Ok(r) = count_formula(n, &f) else {
                    continue;
                };
                if !r.two_factor || !r.exists {
                    continue;
                }
                let base = (f.q() as u128).pow((n as u32 - 1) / 2) + 1;
                let expected = if f.is_even() { base } else { 2 * base };
                assert_eq!(r.formula_count, expected, "{f:?} n={n}");
            }
        }
    }

    #[test]
    fn count_is_invariant_under_factor_reordering() {
        use proptest::prelude::*;
        let mut runner = proptest::test_runner::TestRunner::deterministic();
        runner
            .run(
                &(
                    proptest::collection::vec(1usize..4, 0..4),
                    proptest::collection::vec(1usize..4, 0..3),
                    2u64..6,
                ),
                |(d, e, q)| {
                    let p1 = FactorProfile {
                        n: 0,
                        q,
                        s: d.len() + 1,
                        t: e.len(),
                        d: d.clone(),
                        e: e.clone(),
                    };
                    let mut d2 = d.clone();
                    d2.reverse();
                    let mut e2 = e.clone();
                    e2.rotate_left(e.len().min(1));
                    let p2 = FactorProfile {
                        d: d2,
                        e: e2,
                        ..p1.clone()
                    };
                    prop_assert_eq!(
                        profile_product(q, &p1).unwrap(),
                        profile_product(q, &p2).unwrap()
                    );
                    Ok(())
                },
            )
            .unwrap();
    }

    fn polys(f: &FieldSpec, v: &[&[u32]]) -> Vec<Poly> {
        v.iter()
            .map(|c| Poly::new(f, c.to_vec()).unwrap())
            .collect()
    }

    #[test]
    fn brute_force_examples() {
        let f2 = gf(2, 1);
        assert_eq!(
            brute_force_enumerate(3, &f2).unwrap(),
            polys(&f2, &[&[1], &[0, 1], &[0, 0, 1]])
        );
        let five: Vec<Poly> = (0..5).map(|i| Poly::monomial(&f2, 1, i)).collect();
        assert_eq!(brute_force_enumerate(5, &f2).unwrap(), five);
        assert!(brute_force_enumerate(2, &gf(3, 1)).unwrap().is_empty());
        assert!(matches!(
            brute_force_enumerate_with_budget(9, &f2, 100),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn crt_examples() {
        let f2 = gf(2, 1);
        let en = CrtEnumerator::new(3, &f2).unwrap();
        assert_eq!(en.radices(), vec![1, 3]);
        assert_eq!(
            crt_enumerate(3, &f2).unwrap(),
            brute_force_enumerate(3, &f2).unwrap()
        );
        let en = CrtEnumerator::new(3, &gf(5, 1)).unwrap();
        assert_eq!(en.radices(), vec![2, 6]);
        let en = CrtEnumerator::new(7, &f2).unwrap();
        assert_eq!(en.radices(), vec![1, 7]);
        assert_eq!(
            CrtEnumerator::new(3, &gf(3, 1)).err(),
            Some(Error::MinusOneNotSquare { q: 3 })
        );
    }

    #[test]
    fn hermitian_constituents_satisfy_norm_equation() {
        for (p, m, n) in [
            (2u64, 1u32, 9usize),
            (5, 1, 3),
            (13, 1, 7),
            (2, 1, 15),
            (5, 1, 7),
        ] {
            let f = gf(p, m);
            let en = CrtEnumerator::new(n, &f).unwrap();
            let big = &en.factorization().splitting.field;
            for (slot, g) in en.hermitian.iter().zip(
                en.factorization
                    .self_reciprocal
                    .iter()
                    .filter(|g| g.half_degree > 0),
            ) {
                let r = (f.q() as u64).pow(g.half_degree as u32);
                let distinct: HashSet<u32> = slot.solutions.iter().copied().collect();
                assert_eq!(distinct.len() as u64, r + 1);
                for &b in &slot.solutions {
                    assert_eq!(big.add(1, big.pow_sqm(b, 1 + r)), 0);
                    // b lies in GF(q^{2d})
                    assert_eq!(big.pow_sqm(b, r * r), b);
                }
            }
        }
    }

    #[test]
    fn crt_matches_brute_force_for_odd_q_even_n() {
        for (p, n) in [(5u64, 2usize), (5, 4), (5, 6), (13, 2), (13, 4)] {
            let f = gf(p, 1);
            let crt = crt_enumerate(n, &f).unwrap();
            assert_eq!(crt, brute_force_enumerate(n, &f).unwrap(), "q={p} n={n}");
            assert_eq!(
                crt.len() as u128,
                count_formula(n, &f).unwrap().formula_count
            );
        }
    }

    #[test]
    fn codes_containing_single_words() {
        let f2 = gf(2, 1);
        let u = Codeword::new(&f2, vec![1, 0, 0, 0, 0], vec![0, 1, 0, 0, 0]).unwrap();
        assert_eq!(codes_containing(5, &f2, &u).unwrap(), 1);
        let u = Codeword::new(&f2, vec![1, 1, 0, 0, 0], vec![0, 1, 1, 0, 0]).unwrap();
        assert_eq!(codes_containing(5, &f2, &u).unwrap(), 1);
        let u = Codeword::new(&f2, vec![1; 5], vec![1; 5]).unwrap();
        assert_eq!(codes_containing(5, &f2, &u).unwrap(), 15);
    }

    #[test]
    fn audit_small() {
        let r = lemma7_audit(5, &gf(2, 1)).unwrap();
        assert!(r.passed());
        assert_eq!(r.max_nonconstant_count, 1);
        assert_eq!(r.max_constant_count, 15);
        assert_eq!(r.constant_words, 4);
        assert_eq!(
            lemma7_audit(7, &gf(2, 1)).unwrap_err(),
            Error::NotTwoFactor { n: 7, q: 2 }
        );
        assert!(lemma7_audit(3, &gf(5, 1)).unwrap().passed());
    }

    #[test]
    fn entropy_examples() {
        assert!((entropy_q(2, 0.5).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(entropy_q(3, 0.0).unwrap(), 0.0);
        assert!((entropy_q(4, 0.75).unwrap() - 1.0).abs() < 1e-12);
        assert!(entropy_q(2, 0.6).is_err());
        assert!(entropy_q(1, 0.1).is_err());
        assert_eq!(inv_entropy_q(2, 1.0).unwrap(), 0.5);
        assert_eq!(inv_entropy_q(2, 0.0).unwrap(), 0.0);
        assert!(inv_entropy_q(2, 1.5).is_err());
    }

    #[test]
    fn gv_quarter_binary() {
        // independent oracle: fixed-iteration bisection on the binary entropy
        let h2 = |x: f64| -x * x.log2() - (1.0 - x) * (1.0 - x).log2();
        let (mut lo, mut hi) = (1e-300f64, 0.5f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if h2(mid) < 0.25 {
                lo = mid
            } else {
                hi = mid
            }
        }
        let g = gv_quarter(2).unwrap();
        assert!((g - lo).abs() < 1e-11);
        assert!((entropy_q(2, g).unwrap() - 0.25).abs() <= 1e-9);
        assert!(g > 0.04 && g < 0.043);
    }

    #[test]
    fn entropy_round_trip_and_monotone() {
        for q in [2u64, 3, 4, 5] {
            for k in 0..100 {
                let y = k as f64 / 99.0;
                let x = inv_entropy_q(q, y).unwrap();
                assert!((entropy_q(q, x).unwrap() - y).abs() <= 1e-9, "q={q} y={y}");
            }
            let top = (q - 1) as f64 / q as f64;
            let mut prev = -1.0;
            for k in 0..=1000 {
                let h = entropy_q(q, top * k as f64 / 1000.0).unwrap();
                assert!(h > prev);
                prev = h;
            }
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_indices(1_000_000, 10, 0, 11);
        assert_eq!(a, sample_indices(1_000_000, 10, 0, 11));
        assert_ne!(a, sample_indices(1_000_000, 10, 1, 11));
        assert_eq!(a.len(), 10);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(sample_indices(5, 10, 0, 0), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn census_small_rows() {
        let rows = census_run(&gf(2, 1), &[5, 3, 4], &CensusOptions::default());
        assert_eq!(rows.iter().map(|r| r.n).collect::<Vec<_>>(), vec![3, 4, 5]);
        assert_eq!(rows[0].count, Some(3));
        assert_eq!(rows[0].d_best, Some(2));
        assert!((rows[0].delta.unwrap() - 1.0 / 3.0).abs() < 1e-12);
        assert!(rows[1].error.is_some());
        assert_eq!(rows[2].count, Some(5));
        assert!(rows[0].ms.is_none());
    }

    #[test]
    fn rounding() {
        assert_eq!(round12(1.0 / 3.0).to_string(), "0.333333333333");
        assert_eq!(round12(0.5), 0.5);
        assert_eq!(round12(0.0), 0.0);
    }
}

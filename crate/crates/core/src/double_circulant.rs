//! Double circulant codes with generator matrix `G = (I | A)`, `A` circulant.
//!
//! A message `m` encodes to `(m, m·a mod x^n - 1)`. Self-duality is decided by
//! the identity `a(x) a(x^{-1}) = -1` in GF(q)[x]/(x^n - 1). Minimum distance
//! and weight distribution are exhaustive over messages and run in parallel;
//! the results do not depend on the worker count.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_field::{gcd, parse_field, FieldSpec};
use crate::polyring::{poly_mulmod, Poly};

/// Default cap on the number of messages (`q^n`) an exhaustive scan may visit.
pub const DEFAULT_DISTANCE_BUDGET: u128 = 1 << 26;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCirculantCode {
    field: FieldSpec,
    n: usize,
    a: Poly,
}

/// A word `(v | w)` of length `2n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codeword {
    field: FieldSpec,
    left: Vec<u32>,
    right: Vec<u32>,
}

impl Codeword {
    pub fn new(field: &FieldSpec, left: Vec<u32>, right: Vec<u32>) -> Result<Codeword> {
        if left.len() != right.len() {
            return Err(Error::LengthMismatch {
                expected: left.len(),
                got: right.len(),
            });
        }
        if let Some(&bad) = left.iter().chain(&right).find(|&&c| c >= field.q()) {
            return Err(Error::ElementOutOfRange {
                rep: bad as u64,
                q: field.q(),
            });
        }
        Ok(Codeword {
            field: field.clone(),
            left,
            right,
        })
    }

    /// Splits a length-2n coordinate vector into halves.
    pub fn from_coords(field: &FieldSpec, coords: &[u32]) -> Result<Codeword> {
        if coords.len() % 2 != 0 {
            return Err(Error::LengthMismatch {
                expected: coords.len() + 1,
                got: coords.len(),
            });
        }
        let (l, r) = coords.split_at(coords.len() / 2);
        Codeword::new(field, l.to_vec(), r.to_vec())
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn left(&self) -> &[u32] {
        &self.left
    }

    pub fn right(&self) -> &[u32] {
        &self.right
    }

    /// Half length `n`.
    pub fn half_len(&self) -> usize {
        self.left.len()
    }

    pub fn coords(&self) -> Vec<u32> {
        self.left.iter().chain(&self.right).copied().collect()
    }

    pub fn weight(&self) -> usize {
        self.left
            .iter()
            .chain(&self.right)
            .filter(|&&c| c != 0)
            .count()
    }

    pub fn left_poly(&self) -> Poly {
        Poly::from_raw(&self.field, self.left.clone())
    }

    pub fn right_poly(&self) -> Poly {
        Poly::from_raw(&self.field, self.right.clone())
    }
}

impl Serialize for Codeword {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        let mut st = s.serialize_struct("Codeword", 2)?;
        st.serialize_field("left", &join(&self.left))?;
        st.serialize_field("right", &join(&self.right))?;
        st.end()
    }
}

/// Wire form of a code: `{"q": "p^m", "n": n, "a": "c0,c1,..."}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeRecord {
    pub q: String,
    pub n: usize,
    pub a: String,
}

impl DoubleCirculantCode {
    pub fn new(field: &FieldSpec, n: usize, a: Poly) -> Result<DoubleCirculantCode> {
        if n == 0 {
            return Err(Error::LengthTooSmall { n, min: 1 });
        }
        if gcd(n as u64, field.p() as u64) != 1 {
            return Err(Error::NotCoprime { n, q: field.q() });
        }
        if a.field() != field {
            return Err(Error::FieldMismatch {
                left: field.to_string(),
                right: a.field().to_string(),
            });
        }
        if let Some(d) = a.degree().filter(|&d| d >= n) {
            return Err(Error::DegreeOverflow { degree: d, n });
        }
        Ok(DoubleCirculantCode {
            field: field.clone(),
            n,
            a,
        })
    }

    pub fn from_record(rec: &CodeRecord) -> Result<DoubleCirculantCode> {
        let field = parse_field(&rec.q)?;
        let a = Poly::parse(&field, &rec.a)?;
        DoubleCirculantCode::new(&field, rec.n, a)
    }

    pub fn record(&self) -> CodeRecord {
        CodeRecord {
            q: self.field.to_string(),
            n: self.n,
            a: self.a.to_coeff_string(),
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &Poly {
        &self.a
    }

    pub fn length(&self) -> usize {
        2 * self.n
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    /// The circulant `A`: row `i` is the first row cyclically shifted right
    /// `i` times, i.e. `A[i][j] = a_{(j - i) mod n}`.
    pub fn circulant(&self) -> Vec<Vec<u32>> {
        let first = self.a.dense(self.n);
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| first[(j + self.n - i) % self.n])
                    .collect()
            })
            .collect()
    }

    /// Rows of `G = (I | A)` as codewords.
    pub fn generator_rows(&self) -> Vec<Codeword> {
        self.circulant()
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                let mut e = vec![0; self.n];
                e[i] = 1;
                Codeword {
                    field: self.field.clone(),
                    left: e,
                    right: row,
                }
            })
            .collect()
    }

    fn check_vector(&self, v: &[u32]) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        if let Some(&bad) = v.iter().find(|&&c| c >= self.field.q()) {
            return Err(Error::ElementOutOfRange {
                rep: bad as u64,
                q: self.field.q(),
            });
        }
        Ok(())
    }

    pub fn encode(&self, message: &[u32]) -> Result<Codeword> {
        self.check_vector(message)?;
        let m = Poly::from_raw(&self.field, message.to_vec());
        let w = poly_mulmod(&m, &self.a, self.n)?;
        Ok(Codeword {
            field: self.field.clone(),
            left: message.to_vec(),
            right: w.dense(self.n),
        })
    }

    /// `u = (v | w)` lies in the code iff `w = a v mod x^n - 1`.
    pub fn contains(&self, u: &Codeword) -> Result<bool> {
        if u.field != self.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: u.field.to_string(),
            });
        }
        self.check_vector(&u.left)?;
        self.check_vector(&u.right)?;
        let av = poly_mulmod(&self.a, &u.left_poly(), self.n)?;
        Ok(av == u.right_poly())
    }

    /// `a(x) a(x^{-1}) = -1 mod x^n - 1`, equivalently `A A^t = -I`.
    pub fn is_self_dual(&self) -> bool {
        let prod = poly_mulmod(&self.a, &self.a.conj_xn(self.n), self.n).expect("same field");
        prod == Poly::constant(&self.field, self.field.neg(1))
    }

    fn check_budget(&self, budget: u128) -> Result<()> {
        let work = (self.field.q() as u128)
            .checked_pow(self.n as u32)
            .unwrap_or(u128::MAX);
        if work > budget {
            return Err(Error::BudgetExceeded { work, budget });
        }
        Ok(())
    }

    pub fn min_distance(&self) -> Result<usize> {
        self.min_distance_with_budget(DEFAULT_DISTANCE_BUDGET)
    }

    /// Minimum weight over all nonzero codewords. Only messages whose first
    /// nonzero coordinate is one are visited; a message is abandoned as soon
    /// as its partial weight reaches the best weight seen so far.
    pub fn min_distance_with_budget(&self, budget: u128) -> Result<usize> {
        self.check_budget(budget)?;
        let best = AtomicUsize::new(2 * self.n + 1);
        let scan = Scanner::new(self);
        scan.units().par_iter().for_each(|unit| {
            let mut local = best.load(Ordering::Relaxed);
            scan.run_unit(unit, |vw, w| {
                if vw >= local {
                    return;
                }
                let wt = vw + w.weight_capped(local - vw);
                if wt < local {
                    local = best.fetch_min(wt, Ordering::Relaxed).min(wt);
                }
            });
        });
        Ok(best.into_inner())
    }

    pub fn weight_distribution(&self) -> Result<BTreeMap<usize, u128>> {
        self.weight_distribution_with_budget(DEFAULT_DISTANCE_BUDGET)
    }

    /// Number of codewords of each weight, the zero word included. Scalar
    /// multiples share a weight, so each normalized message counts `q - 1`.
    pub fn weight_distribution_with_budget(&self, budget: u128) -> Result<BTreeMap<usize, u128>> {
        self.check_budget(budget)?;
        let scan = Scanner::new(self);
        let len = 2 * self.n + 1;
        let counts = scan
            .units()
            .par_iter()
            .map(|unit| {
                let mut hist = vec![0u128; len];
                scan.run_unit(unit, |vw, w| hist[vw + w.weight_capped(usize::MAX)] += 1);
                hist
            })
            .reduce(
                || vec![0u128; len],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
        let scale = self.field.q() as u128 - 1;
        let mut out = BTreeMap::new();
        out.insert(0, 1);
        for (wt, &c) in counts.iter().enumerate() {
            if c > 0 {
                *out.entry(wt).or_insert(0) += c * scale;
            }
        }
        Ok(out)
    }
}

/// Right half of a codeword during a scan.
enum RightHalf<'a> {
    Packed(u64),
    Dense(&'a [u32]),
}

impl RightHalf<'_> {
    /// Number of nonzero entries, counting stops once it reaches `cap`.
    #[inline]
    fn weight_capped(&self, cap: usize) -> usize {
        match self {
            RightHalf::Packed(bits) => bits.count_ones() as usize,
            RightHalf::Dense(w) => {
                let mut c = 0;
                for &x in *w {
                    if x != 0 {
                        c += 1;
                        if c >= cap {
                            break;
                        }
                    }
                }
                c
            }
        }
    }
}

/// A slice of the message space: coordinates before `lead` are zero,
/// coordinate `lead` is one, the next `prefix.len()` coordinates are fixed and
/// the remaining ones run over every value.
struct Unit {
    lead: usize,
    prefix: Vec<u32>,
}

struct Scanner<'a> {
    code: &'a DoubleCirculantCode,
    rows: Vec<Vec<u32>>,
    packed: Option<Vec<u64>>,
}

impl<'a> Scanner<'a> {
    fn new(code: &'a DoubleCirculantCode) -> Scanner<'a> {
        let rows = code.circulant();
        let packed = (code.field.q() == 2 && code.n <= 64).then(|| {
            rows.iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .fold(0u64, |acc, (j, &c)| acc | ((c as u64) << j))
                })
                .collect()
        });
        Scanner { code, rows, packed }
    }

    fn units(&self) -> Vec<Unit> {
        let (n, q) = (self.code.n, self.code.field.q() as u64);
        let mut units = Vec::new();
        for lead in 0..n {
            let free = n - 1 - lead;
            let mut k = 0;
            while k < free && q.pow(k as u32) < 256 {
                k += 1;
            }
            for idx in 0..q.pow(k as u32) {
                let mut prefix = Vec::with_capacity(k);
                let mut r = idx;
                for _ in 0..k {
                    prefix.push((r % q) as u32);
                    r /= q;
                }
                units.push(Unit { lead, prefix });
            }
        }
        units
    }

    /// Visits every message of the unit; `visit` gets the left weight and the
    /// right half.
    fn run_unit(&self, unit: &Unit, mut visit: impl FnMut(usize, RightHalf<'_>)) {
        let f = &self.code.field;
        let n = self.code.n;
        let q = f.q();
        let start = unit.lead + 1 + unit.prefix.len();
        let mut digits = vec![0u32; n];
        digits[unit.lead] = 1;
        digits[unit.lead + 1..start].copy_from_slice(&unit.prefix);
        let fixed_weight = digits.iter().filter(|&&d| d != 0).count();

        if let Some(packed) = &self.packed {
            let mut w = digits
                .iter()
                .zip(packed)
                .filter(|(&d, _)| d != 0)
                .fold(0u64, |acc, (_, r)| acc ^ r);
            let mut vw = fixed_weight;
            loop {
                visit(vw, RightHalf::Packed(w));
                // binary odometer over digits[start..]
                let mut j = n;
                loop {
                    if j == start {
                        return;
                    }
                    j -= 1;
                    w ^= packed[j];
                    if digits[j] == 0 {
                        digits[j] = 1;
                        vw += 1;
                        break;
                    }
                    digits[j] = 0;
                    vw -= 1;
                }
            }
        }

        let mut w = vec![0u32; n];
        for (i, &d) in digits.iter().enumerate().filter(|(_, &d)| d != 0) {
            for (wk, &r) in w.iter_mut().zip(&self.rows[i]) {
                *wk = f.add(*wk, f.mul(d, r));
            }
        }
        let mut vw = fixed_weight;
        loop {
            visit(vw, RightHalf::Dense(&w));
            let mut j = n;
            loop {
                if j == start {
                    return;
                }
                j -= 1;
                let old = digits[j];
                let new = (old + 1) % q;
                let delta = f.sub(new, old);
                for (wk, &r) in w.iter_mut().zip(&self.rows[j]) {
                    *wk = f.add(*wk, f.mul(delta, r));
                }
                digits[j] = new;
                if old == 0 {
                    vw += 1;
                }
                if new == 0 {
                    vw -= 1;
                } else {
                    break;
                }
            }
        }
    }
}

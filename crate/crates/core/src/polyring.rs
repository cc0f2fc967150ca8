//! Polynomials over GF(q), the cyclic ring GF(q)[x]/(x^n - 1), and the
//! factorization of x^n - 1 into self-reciprocal factors and reciprocal pairs.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite_field::{gcd, is_prime, make_field, prime_power, Embedding, FieldSpec};

/// A polynomial over a finite field, coefficients ascending in degree with no
/// trailing zeros. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<u32>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field, self.to_coeff_string())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_coeff_string())
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_coeff_string())
    }
}

/// Ordered by field, then by the integer `sum c_i q^i`.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.field.p(), self.field.m())
            .cmp(&(other.field.p(), other.field.m()))
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn trim(c: &mut Vec<u32>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

impl Poly {
    pub fn new(field: &FieldSpec, mut coeffs: Vec<u32>) -> Result<Poly> {
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= field.q()) {
            return Err(Error::ElementOutOfRange {
                rep: bad as u64,
                q: field.q(),
            });
        }
        trim(&mut coeffs);
        Ok(Poly {
            field: field.clone(),
            coeffs,
        })
    }

    /// Unchecked constructor for internal use; trims trailing zeros.
    pub(crate) fn from_raw(field: &FieldSpec, mut coeffs: Vec<u32>) -> Poly {
        trim(&mut coeffs);
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &FieldSpec) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &FieldSpec) -> Poly {
        Poly::constant(field, 1)
    }

    pub fn constant(field: &FieldSpec, c: u32) -> Poly {
        Poly::from_raw(field, vec![c])
    }

    /// `c x^k`.
    pub fn monomial(field: &FieldSpec, c: u32, k: usize) -> Poly {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Poly::from_raw(field, v)
    }

    /// The polynomial whose coefficients are the base-q digits of `index`.
    pub fn from_index(field: &FieldSpec, mut index: u128) -> Poly {
        let q = field.q() as u128;
        let mut c = Vec::new();
        while index > 0 {
            c.push((index % q) as u32);
            index /= q;
        }
        Poly::from_raw(field, c)
    }

    /// `sum c_i q^i`, the position of this polynomial in canonical order.
    pub fn index(&self) -> u128 {
        let q = self.field.q() as u128;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * q + c as u128)
    }

    /// Parses a comma-separated list of coefficient reps ascending in degree.
    pub fn parse(field: &FieldSpec, s: &str) -> Result<Poly> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Poly::zero(field));
        }
        let coeffs = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Poly::new(field, coeffs)
    }

    pub fn to_coeff_string(&self) -> String {
        self.coeffs
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Coefficients padded with zeros to length `n`.
    pub fn dense(&self, n: usize) -> Vec<u32> {
        let mut v = self.coeffs.clone();
        v.resize(n.max(v.len()), 0);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let c = (0..len)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Poly::from_raw(f, c))
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::from_raw(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = &self.field;
        Poly::from_raw(f, self.coeffs.iter().map(|&x| f.mul(x, c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        let f = &self.field;
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Poly::from_raw(f, out))
    }

    /// Quotient and remainder.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let inv_lead = f.inv(divisor.leading())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![0u32; r.len() - dd];
        for top in (dd..r.len()).rev() {
            let c = f.mul(r[top], inv_lead);
            if c == 0 {
                continue;
            }
            let shift = top - dd;
            quot[shift] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                r[shift + i] = f.sub(r[shift + i], f.mul(c, d));
            }
        }
        r.truncate(dd);
        Ok((Poly::from_raw(f, quot), Poly::from_raw(f, r)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Scaled to leading coefficient one (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.leading() {
            0 | 1 => self.clone(),
            lead => self.scale(self.field.inv(lead).expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Reduction modulo x^n - 1: exponents folded mod n.
    pub fn reduce_xn(&self, n: usize) -> Poly {
        let f = &self.field;
        let mut out = vec![0u32; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i % n] = f.add(out[i % n], c);
        }
        Poly::from_raw(f, out)
    }

    /// `f(x^{-1})` in GF(q)[x]/(x^n - 1).
    pub fn conj_xn(&self, n: usize) -> Poly {
        let f = &self.field;
        let mut out = vec![0u32; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let j = (n - i % n) % n;
            out[j] = f.add(out[j], c);
        }
        Poly::from_raw(f, out)
    }

    /// The monic normalization of `x^deg f(1/x)`.
    pub fn reciprocal(&self) -> Result<Poly> {
        if self.coeff(0) == 0 {
            return Err(Error::DivisibleByX);
        }
        let rev: Vec<u32> = self.coeffs.iter().rev().copied().collect();
        Ok(Poly::from_raw(&self.field, rev).monic())
    }

    pub fn is_self_reciprocal(&self) -> bool {
        self.reciprocal()
            .map(|r| r == self.monic())
            .unwrap_or(false)
    }

    /// `x^n - 1`.
    pub fn xn_minus_one(field: &FieldSpec, n: usize) -> Poly {
        let mut c = vec![0u32; n + 1];
        c[0] = field.neg(1);
        c[n] = 1;
        Poly::from_raw(field, c)
    }

    /// `self^e mod modulus`.
    pub fn powmod(&self, mut e: u128, modulus: &Poly) -> Result<Poly> {
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(&self.field).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?.rem(modulus)?;
            }
            base = base.mul(&base)?.rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Rabin's irreducibility test over GF(q): `x^{q^N} = x mod f`, and
    /// `gcd(x^{q^{N/r}} - x, f) = 1` for every prime `r | N`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = match self.degree() {
            None | Some(0) => return Ok(false),
            Some(1) => return Ok(true),
            Some(d) => d,
        };
        let f = self.monic();
        let field = &self.field;
        let x = Poly::monomial(field, 1, 1);
        let q = field.q() as u128;
        // frob[k] = x^{q^k} mod f
        let mut frob = Vec::with_capacity(n + 1);
        frob.push(x.rem(&f)?);
        for k in 1..=n {
            let next = frob[k - 1].powmod(q, &f)?;
            frob.push(next);
        }
        if frob[n] != x.rem(&f)? {
            return Ok(false);
        }
        for r in crate::finite_field::prime_factors(n as u64) {
            let g = frob[n / r as usize].sub(&x)?.gcd(&f)?;
            if g.degree() != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `f * g mod (x^n - 1)`.
pub fn poly_mulmod(f: &Poly, g: &Poly, n: usize) -> Result<Poly> {
    if n == 0 {
        return Err(Error::LengthTooSmall { n, min: 1 });
    }
    f.check_field(g)?;
    let field = &f.field;
    let mut out = vec![0u32; n];
    for (i, &a) in f.coeffs.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.coeffs.iter().enumerate() {
            let k = (i + j) % n;
            out[k] = field.add(out[k], field.mul(a, b));
        }
    }
    Ok(Poly::from_raw(field, out))
}

/// Multiplicative order of `q` modulo `n` (requires gcd(q, n) = 1).
pub fn multiplicative_order(q: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let mut x = q % n;
    let mut k = 1;
    while x != 1 {
        x = (x as u128 * q as u128 % n as u128) as u64;
        k += 1;
    }
    k
}

/// Partition of `{0, .., n-1}` into q-cyclotomic cosets, each sorted, the list
/// sorted by smallest element.
pub fn cyclotomic_cosets(n: usize, q: u64) -> Result<Vec<Vec<usize>>> {
    if n == 0 {
        return Err(Error::LengthTooSmall { n, min: 1 });
    }
    if gcd(n as u64, q) != 1 {
        return Err(Error::NotCoprime { n, q: q as u32 });
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut coset = Vec::new();
        let mut c = start;
        while !seen[c] {
            seen[c] = true;
            coset.push(c);
            c = (c as u128 * q as u128 % n as u128) as usize;
        }
        coset.sort_unstable();
        out.push(coset);
    }
    Ok(out)
}

fn neg_coset(coset: &[usize], n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = coset.iter().map(|&c| (n - c) % n).collect();
    v.sort_unstable();
    v
}

/// Degree bookkeeping of x^n - 1 read off the cyclotomic cosets, without
/// computing any polynomial. Usable when the splitting field is too large to
/// build.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorProfile {
    pub n: usize,
    pub q: u64,
    /// Number of self-reciprocal factors, x - 1 (and x + 1 for even n) included.
    pub s: usize,
    /// Number of reciprocal pairs.
    pub t: usize,
    /// Half-degrees of the self-reciprocal factors of even degree, in factor order.
    pub d: Vec<usize>,
    /// Degrees of one member of each reciprocal pair, in factor order.
    pub e: Vec<usize>,
}

impl FactorProfile {
    pub fn factor_count(&self) -> usize {
        self.s + 2 * self.t
    }
}

/// Self-reciprocal cosets first ({0}, then {n/2} for even n, then by minimum),
/// then the pairs keyed by the member with smaller minimum.
fn classify_cosets(n: usize, q: u64) -> Result<(Vec<Vec<usize>>, Vec<(Vec<usize>, Vec<usize>)>)> {
    let cosets = cyclotomic_cosets(n, q)?;
    let mut selfrec = Vec::new();
    let mut pairs = Vec::new();
    for c in &cosets {
        let neg = neg_coset(c, n);
        if &neg == c {
            selfrec.push(c.clone());
        } else if c[0] < neg[0] {
            pairs.push((c.clone(), neg));
        }
    }
    if n % 2 == 0 {
        let pos = selfrec
            .iter()
            .position(|c| c == &vec![n / 2])
            .expect("{n/2} is self-reciprocal");
        let half = selfrec.remove(pos);
        selfrec.insert(1, half);
    }
    Ok((selfrec, pairs))
}

pub fn factor_profile(n: usize, q: u64) -> Result<FactorProfile> {
    let (selfrec, pairs) = classify_cosets(n, q)?;
    Ok(FactorProfile {
        n,
        q,
        s: selfrec.len(),
        t: pairs.len(),
        d: selfrec
            .iter()
            .filter(|c| c.len() > 1)
            .map(|c| c.len() / 2)
            .collect(),
        e: pairs.iter().map(|(c, _)| c.len()).collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SelfReciprocalFactor {
    pub poly: Poly,
    /// Half of the degree; zero for the linear factors x - 1 and x + 1.
    pub half_degree: usize,
    pub coset: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReciprocalPair {
    pub h: Poly,
    pub h_star: Poly,
    pub degree: usize,
    pub coset: Vec<usize>,
    pub star_coset: Vec<usize>,
}

/// GF(q^k) with k = ord_n(q), together with a primitive n-th root of unity
/// and the embedding of GF(q).
#[derive(Clone, Debug)]
pub struct SplittingField {
    pub field: FieldSpec,
    pub embedding: Embedding,
    /// Primitive n-th root of unity.
    pub root: u32,
    /// Extension degree over GF(q).
    pub degree: u32,
}

/// `x^n - 1 = alpha * prod g_j * prod h_j h_j^*`.
#[derive(Clone, Debug, Serialize)]
pub struct XnFactorization {
    pub n: usize,
    pub field: FieldSpec,
    pub alpha: u32,
    pub self_reciprocal: Vec<SelfReciprocalFactor>,
    pub pairs: Vec<ReciprocalPair>,
    #[serde(skip)]
    pub splitting: SplittingField,
}

impl XnFactorization {
    pub fn s(&self) -> usize {
        self.self_reciprocal.len()
    }

    pub fn t(&self) -> usize {
        self.pairs.len()
    }

    pub fn factor_count(&self) -> usize {
        self.s() + 2 * self.t()
    }

    /// All irreducible factors in order: self-reciprocal ones, then each pair
    /// as h, h*.
    pub fn factors(&self) -> Vec<&Poly> {
        self.self_reciprocal
            .iter()
            .map(|g| &g.poly)
            .chain(self.pairs.iter().flat_map(|p| [&p.h, &p.h_star]))
            .collect()
    }

    /// Multiplies the factorization back out.
    pub fn product(&self) -> Result<Poly> {
        self.factors()
            .into_iter()
            .try_fold(Poly::constant(&self.field, self.alpha), |acc, f| acc.mul(f))
    }

    pub fn profile(&self) -> FactorProfile {
        FactorProfile {
            n: self.n,
            q: self.field.q() as u64,
            s: self.s(),
            t: self.t(),
            d: self
                .self_reciprocal
                .iter()
                .filter(|g| g.half_degree > 0)
                .map(|g| g.half_degree)
                .collect(),
            e: self.pairs.iter().map(|p| p.degree).collect(),
        }
    }
}

/// Builds GF(q^{ord_n(q)}) and a primitive n-th root of unity in it.
pub fn splitting_field(n: usize, field: &FieldSpec) -> Result<SplittingField> {
    let q = field.q() as u64;
    if gcd(n as u64, field.p() as u64) != 1 {
        return Err(Error::RepeatedRoots { n, p: field.p() });
    }
    let k = multiplicative_order(q, n as u64) as u32;
    let big = make_field(field.p() as u64, field.m() * k)?;
    let embedding = field.embedding_into(&big)?;
    let root = big.exp((big.q() as u64 - 1) / n as u64);
    Ok(SplittingField {
        field: big,
        embedding,
        root,
        degree: k,
    })
}

/// Minimal polynomial over GF(q) of `root^c`, `c` ranging over `coset`.
fn minimal_polynomial(coset: &[usize], split: &SplittingField, field: &FieldSpec) -> Result<Poly> {
    let big = &split.field;
    let mut acc = vec![1u32];
    for &c in coset {
        let z = big.exp(big.log(split.root) as u64 * c as u64);
        // acc *= (x - z)
        let mut next = vec![0u32; acc.len() + 1];
        for (i, &a) in acc.iter().enumerate() {
            next[i + 1] = big.add(next[i + 1], a);
            next[i] = big.sub(next[i], big.mul(a, z));
        }
        acc = next;
    }
    let coeffs =
        acc.iter()
            .map(|&b| {
                split.embedding.pull_back(b).ok_or_else(|| {
                    Error::Unsupported("minimal polynomial left the base field".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
    Poly::new(field, coeffs)
}

/// Irreducible factorization of x^n - 1 over `field` for gcd(n, p) = 1.
pub fn factor_xn_minus_1(n: usize, field: &FieldSpec) -> Result<XnFactorization> {
    if n == 0 {
        return Err(Error::LengthTooSmall { n, min: 1 });
    }
    if gcd(n as u64, field.p() as u64) != 1 {
        return Err(Error::RepeatedRoots { n, p: field.p() });
    }
    let split = splitting_field(n, field)?;
    let (selfrec, pairs) = classify_cosets(n, field.q() as u64)?;
    let self_reciprocal = selfrec
        .into_iter()
        .map(|coset| {
            let poly = minimal_polynomial(&coset, &split, field)?;
            let half_degree = if coset.len() == 1 { 0 } else { coset.len() / 2 };
            Ok(SelfReciprocalFactor {
                poly,
                half_degree,
                coset,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pairs = pairs
        .into_iter()
        .map(|(coset, star_coset)| {
            let h = minimal_polynomial(&coset, &split, field)?;
            let h_star = minimal_polynomial(&star_coset, &split, field)?;
            Ok(ReciprocalPair {
                degree: coset.len(),
                h,
                h_star,
                coset,
                star_coset,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(XnFactorization {
        n,
        field: field.clone(),
        alpha: 1,
        self_reciprocal,
        pairs,
        splitting: split,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ArtinFlags {
    pub n_prime: bool,
    pub q_nonsquare: bool,
    pub primitive: bool,
    pub two_factor: bool,
}

fn is_perfect_square(q: u64) -> bool {
    let r = (q as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).any(|x| x * x == q)
}

/// Artin primitive-root flags for (q, n). `two_factor` is decided by testing
/// (x^n - 1)/(x - 1) for irreducibility, independently of the order of q.
pub fn artin_condition(q: u64, n: usize) -> Result<ArtinFlags> {
    if n < 2 {
        return Err(Error::LengthTooSmall { n, min: 2 });
    }
    if gcd(n as u64, q) != 1 {
        return Err(Error::NotCoprime { n, q: q as u32 });
    }
    let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let field = make_field(p, m)?;
    let h = Poly::from_raw(&field, vec![1; n]);
    Ok(ArtinFlags {
        n_prime: is_prime(n as u64),
        q_nonsquare: !is_perfect_square(q),
        primitive: multiplicative_order(q, n as u64) == n as u64 - 1,
        two_factor: h.is_irreducible()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, m: u32) -> FieldSpec {
        make_field(p, m).unwrap()
    }

    fn poly(f: &FieldSpec, c: &[u32]) -> Poly {
        Poly::new(f, c.to_vec()).unwrap()
    }

    #[test]
    fn mulmod_examples() {
        let f2 = gf(2, 1);
        let f5 = gf(5, 1);
        assert_eq!(
            poly_mulmod(&poly(&f2, &[0, 1]), &poly(&f2, &[0, 0, 1]), 3).unwrap(),
            poly(&f2, &[1])
        );
        assert_eq!(
            poly_mulmod(&poly(&f5, &[2]), &poly(&f5, &[2]), 3).unwrap(),
            poly(&f5, &[4])
        );
        assert_eq!(
            poly_mulmod(&poly(&f2, &[1, 1]), &poly(&f2, &[1, 1]), 5).unwrap(),
            poly(&f2, &[1, 0, 1])
        );
        assert!(poly_mulmod(&poly(&f2, &[1]), &poly(&f5, &[1]), 3).is_err());
    }

    #[test]
    fn canonical_form_and_parsing() {
        let f2 = gf(2, 1);
        let p = Poly::parse(&f2, "1,1,0,1").unwrap();
        assert_eq!(p.degree(), Some(3));
        assert_eq!(p.to_coeff_string(), "1,1,0,1");
        assert_eq!(Poly::parse(&f2, "1,0,0").unwrap().coeffs(), &[1]);
        assert!(Poly::parse(&f2, "").unwrap().is_zero());
        assert!(Poly::parse(&f2, "2").is_err());
        assert!(matches!(Poly::parse(&f2, "1,a"), Err(Error::Parse(_))));
    }

    #[test]
    fn index_order_matches_integer_order() {
        let f3 = gf(3, 1);
        let mut v: Vec<Poly> = (0..81).rev().map(|i| Poly::from_index(&f3, i)).collect();
        v.sort();
        for (i, p) in v.iter().enumerate() {
            assert_eq!(p.index(), i as u128);
        }
    }

    #[test]
    fn reciprocal_examples() {
        let f2 = gf(2, 1);
        assert_eq!(
            poly(&f2, &[1, 1, 0, 1]).reciprocal().unwrap(),
            poly(&f2, &[1, 0, 1, 1])
        );
        let f5 = gf(5, 1);
        // x - 1 = 4 + x -> reversed 1 + 4x -> monic 4^{-1}(1 + 4x) = 4 + x
        assert_eq!(poly(&f5, &[4, 1]).reciprocal().unwrap(), poly(&f5, &[4, 1]));
        let f4 = gf(2, 2);
        // x + w -> w x + 1 -> x + w^{-1} = x + w^2 (reps: w = 2, w^2 = 3)
        assert_eq!(poly(&f4, &[2, 1]).reciprocal().unwrap(), poly(&f4, &[3, 1]));
        assert_eq!(poly(&f2, &[0, 1]).reciprocal(), Err(Error::DivisibleByX));
    }

    #[test]
    fn reciprocal_is_an_involution() {
        let f = gf(3, 1);
        for i in 1..729u128 {
            let p = Poly::from_index(&f, i);
            if p.coeff(0) == 0 {
                continue;
            }
            assert_eq!(p.reciprocal().unwrap().reciprocal().unwrap(), p.monic());
        }
    }

    #[test]
    fn divrem_and_gcd() {
        let f = gf(5, 1);
        let a = poly(&f, &[1, 2, 3, 4]);
        let b = poly(&f, &[2, 0, 1]);
        let (quot, r) = a.divrem(&b).unwrap();
        assert_eq!(quot.mul(&b).unwrap().add(&r).unwrap(), a);
        assert!(r.degree().unwrap_or(0) < 2);
        let g = a
            .mul(&b)
            .unwrap()
            .gcd(&b.mul(&poly(&f, &[3, 1])).unwrap())
            .unwrap();
        assert_eq!(g, b.monic());
        assert_eq!(
            a.divrem(&Poly::zero(&f)).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn coset_examples() {
        assert_eq!(cyclotomic_cosets(3, 2).unwrap(), vec![vec![0], vec![1, 2]]);
        assert_eq!(
            cyclotomic_cosets(7, 2).unwrap(),
            vec![vec![0], vec![1, 2, 4], vec![3, 5, 6]]
        );
        assert_eq!(
            cyclotomic_cosets(3, 4).unwrap(),
            vec![vec![0], vec![1], vec![2]]
        );
        assert!(matches!(
            cyclotomic_cosets(4, 2),
            Err(Error::NotCoprime { .. })
        ));
    }

    // Every monic irreducible of degree <= 3 over the field, by trial
    // division; used to factor x^n - 1 without cosets.
    fn trial_division_factors(n: usize, f: &FieldSpec) -> Vec<Poly> {
        let mut rest = Poly::xn_minus_one(f, n);
        let mut found = Vec::new();
        for deg in 1..=n {
            let count = (f.q() as u128).pow(deg as u32);
            for idx in 0..count {
                let mut cand = Poly::from_index(f, idx).dense(deg);
                cand.push(1);
                let cand = Poly::new(f, cand).unwrap();
                loop {
                    let (qq, r) = rest.divrem(&cand).unwrap();
                    if !r.is_zero() {
                        break;
                    }
                    found.push(cand.clone());
                    rest = qq;
                }
            }
            if rest.degree() == Some(0) {
                break;
            }
        }
        found.sort();
        found
    }

    #[test]
    fn factorization_examples_match_trial_division() {
        let f2 = gf(2, 1);
        let f3 = factor_xn_minus_1(3, &f2).unwrap();
        assert_eq!((f3.s(), f3.t()), (2, 0));
        assert_eq!(f3.self_reciprocal[0].poly, poly(&f2, &[1, 1]));
        assert_eq!(f3.self_reciprocal[1].poly, poly(&f2, &[1, 1, 1]));
        assert_eq!(f3.self_reciprocal[1].half_degree, 1);

        let f7 = factor_xn_minus_1(7, &f2).unwrap();
        assert_eq!((f7.s(), f7.t()), (1, 1));
        assert_eq!(f7.pairs[0].degree, 3);
        let mut cubics = vec![f7.pairs[0].h.clone(), f7.pairs[0].h_star.clone()];
        cubics.sort();
        assert_eq!(
            cubics,
            vec![poly(&f2, &[1, 1, 0, 1]), poly(&f2, &[1, 0, 1, 1])]
        );

        let f4 = gf(2, 2);
        let f34 = factor_xn_minus_1(3, &f4).unwrap();
        assert_eq!((f34.s(), f34.t()), (1, 1));
        assert_eq!(f34.pairs[0].degree, 1);

        for (n, f) in [(3, &f2), (7, &f2), (3, &f4), (5, &f2), (9, &f2), (15, &f2)] {
            let mut ours: Vec<Poly> = factor_xn_minus_1(n, f)
                .unwrap()
                .factors()
                .into_iter()
                .cloned()
                .collect();
            ours.sort();
            assert_eq!(ours, trial_division_factors(n, f), "n={n} {f:?}");
        }
    }

    #[test]
    fn factorization_invariants() {
        let cases: &[(u64, u32, &[usize])] = &[
            (2, 1, &[1, 3, 5, 7, 9, 11, 13, 15, 17, 21, 23, 31]),
            (3, 1, &[1, 2, 4, 5, 7, 8, 10, 11, 13, 16, 20]),
            (2, 2, &[3, 5, 7, 9, 15]),
            (5, 1, &[2, 3, 4, 6, 7, 8, 12, 13]),
            (3, 2, &[4, 5, 8, 10]),
            (13, 1, &[2, 3, 4, 6, 7]),
        ];
        for &(p, m, ns) in cases {
            let f = gf(p, m);
            for &n in ns {
                let fac = factor_xn_minus_1(n, &f).unwrap();
                assert_eq!(
                    fac.product().unwrap(),
                    Poly::xn_minus_one(&f, n),
                    "n={n} {f:?}"
                );
                let degree_sum: usize = fac.factors().iter().map(|g| g.degree().unwrap()).sum();
                assert_eq!(degree_sum, n);
                assert_eq!(
                    fac.factor_count(),
                    cyclotomic_cosets(n, f.q() as u64).unwrap().len()
                );
                assert_eq!(
                    fac.self_reciprocal[0].poly,
                    Poly::new(&f, vec![f.neg(1), 1]).unwrap()
                );
                if n % 2 == 0 {
                    assert_eq!(fac.self_reciprocal[1].poly, poly(&f, &[1, 1]));
                }
                for g in &fac.self_reciprocal {
                    assert!(g.poly.is_self_reciprocal());
                    assert!(g.poly.is_irreducible().unwrap());
                    let deg = g.poly.degree().unwrap();
                    assert!(deg == 1 && g.half_degree == 0 || deg == 2 * g.half_degree);
                }
                for pr in &fac.pairs {
                    assert_eq!(pr.h.reciprocal().unwrap(), pr.h_star);
                    assert_ne!(pr.h, pr.h_star);
                    assert_eq!(pr.h.degree(), Some(pr.degree));
                    assert!(pr.h.is_irreducible().unwrap() && pr.h_star.is_irreducible().unwrap());
                }
                let all = fac.factors();
                for i in 0..all.len() {
                    for j in i + 1..all.len() {
                        assert_eq!(all[i].gcd(all[j]).unwrap().degree(), Some(0));
                    }
                }
                assert_eq!(fac.profile(), factor_profile(n, f.q() as u64).unwrap());
            }
        }
    }

    #[test]
    fn repeated_roots_rejected() {
        assert_eq!(
            factor_xn_minus_1(6, &gf(3, 1)).unwrap_err(),
            Error::RepeatedRoots { n: 6, p: 3 }
        );
    }

    #[test]
    fn irreducibility_test_agrees_with_trial_division() {
        let f = gf(3, 1);
        for deg in 1..=4usize {
            let count = 3u128.pow(deg as u32);
            for idx in 0..count {
                let mut c = Poly::from_index(&f, idx).dense(deg);
                c.push(1);
                let p = Poly::new(&f, c).unwrap();
                let oracle = (1..=deg / 2).all(|d| {
                    (0..3u128.pow(d as u32)).all(|j| {
                        let mut g = Poly::from_index(&f, j).dense(d);
                        g.push(1);
                        !p.rem(&Poly::new(&f, g).unwrap()).unwrap().is_zero()
                    })
                });
                assert_eq!(p.is_irreducible().unwrap(), oracle, "{p:?}");
            }
        }
    }

    #[test]
    fn artin_examples() {
        let a = artin_condition(2, 5).unwrap();
        assert!(a.primitive && a.two_factor && a.n_prime && a.q_nonsquare);
        assert!(!artin_condition(2, 7).unwrap().primitive);
        assert!(!artin_condition(4, 3).unwrap().q_nonsquare);
        assert!(artin_condition(2, 4).is_err());
        assert!(artin_condition(6, 5).is_err());
    }

    #[test]
    fn two_factor_matches_profile_and_primitivity() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
            for n in (3..=31).filter(|&n| is_prime(n as u64)) {
                if gcd(n as u64, q) != 1 {
                    continue;
                }
                let flags = artin_condition(q, n).unwrap();
                assert_eq!(flags.two_factor, flags.primitive, "q={q} n={n}");
                let prof = factor_profile(n, q).unwrap();
                let closed_shape = prof.s == 2 && prof.t == 0 && prof.d == vec![(n - 1) / 2];
                assert_eq!(flags.two_factor, closed_shape, "q={q} n={n}");
            }
        }
    }
}

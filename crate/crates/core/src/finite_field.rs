//! Arithmetic in GF(p^m) over a polynomial basis.
//!
//! An element is stored as a single integer `rep` in `[0, q)` whose base-`p`
//! digits are the coefficients of its polynomial representative, least
//! significant digit first. The defining modulus of GF(p^m) is the
//! lexicographically smallest monic irreducible of degree `m` (coefficients
//! compared low degree first), so encodings are reproducible.
//!
//! Multiplication goes through discrete log / antilog tables built once per
//! field. Fields are interned: `make_field(p, m)` returns the same handle on
//! every call.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

struct FieldInner {
    p: u32,
    m: u32,
    q: u32,
    /// Low degree first, monic, length m + 1.
    modulus: Vec<u32>,
    generator: u32,
    /// `exp[i] = generator^i` for `i` in `[0, 2(q-1))`.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
}

/// Handle to an interned finite field GF(p^m).
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldInner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.m == other.0.m)
    }
}

impl Eq for FieldSpec {}

impl std::hash::Hash for FieldSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (self.0.p, self.0.m).hash(state);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.m)
    }
}

/// Serialized form, `"p^m"`.
impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.0.p, self.0.m)
    }
}

impl serde::Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in ascending order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits `q` as `p^m`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut m = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        m += 1;
    }
    Some((p, m))
}

fn registry() -> &'static Mutex<HashMap<(u32, u32), FieldSpec>> {
    static REGISTRY: OnceLock<Mutex<HashMap<(u32, u32), FieldSpec>>> = OnceLock::new();
    REGISTRY.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Returns the canonical GF(p^m).
pub fn make_field(p: u64, m: u32) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m < 1 {
        return Err(Error::ZeroDegree);
    }
    let q = (p as u128)
        .checked_pow(m)
        .filter(|&q| q <= MAX_ORDER as u128);
    if q.is_none() {
        return Err(Error::FieldTooLarge { p, m });
    }
    let key = (p as u32, m);
    if let Some(f) = registry().lock().unwrap().get(&key) {
        return Ok(f.clone());
    }
    // Built outside the lock; a racing builder produces an identical field.
    let field = FieldSpec(Arc::new(FieldInner::build(p as u32, m)));
    let mut reg = registry().lock().unwrap();
    Ok(reg.entry(key).or_insert(field).clone())
}

/// Parses `"p^m"` or a plain prime power such as `"9"`.
pub fn parse_field(s: &str) -> Result<FieldSpec> {
    let s = s.trim();
    let bad = || {
        Error::Parse(format!(
            "invalid field {s:?}, expected \"p^m\" or a prime power"
        ))
    };
    if let Some((p, m)) = s.split_once('^') {
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let m: u32 = m.trim().parse().map_err(|_| bad())?;
        return make_field(p, m);
    }
    let q: u64 = s.parse().map_err(|_| bad())?;
    let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    make_field(p, m)
}

// Dense polynomials over GF(p), low degree first. Only used while building a
// field, before the log tables exist.
mod prime_poly {
    pub fn trim(f: &mut Vec<u32>) {
        while f.last() == Some(&0) {
            f.pop();
        }
    }

    pub fn rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
        let mut r = f.to_vec();
        trim(&mut r);
        let dg = g.len() - 1;
        let inv_lead = inv_mod(g[dg], p);
        while r.len() > dg {
            let shift = r.len() - 1 - dg;
            let c = (r[r.len() - 1] as u64 * inv_lead as u64 % p as u64) as u32;
            for (i, &gi) in g.iter().enumerate() {
                let t = (c as u64 * gi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; f.len() + g.len() - 1];
        for (i, &a) in f.iter().enumerate() {
            for (j, &b) in g.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % p as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|x| x as u32).collect();
        trim(&mut out);
        out
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        pow_mod(a as u64, p as u64 - 2, p as u64) as u32
    }

    pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1 % p;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    /// Monic polynomial of degree `deg` whose lower coefficients are the
    /// base-p digits of `index`, with the constant term most significant.
    pub fn monic_from_index(mut index: u64, deg: usize, p: u32) -> Vec<u32> {
        let mut f = vec![0u32; deg + 1];
        f[deg] = 1;
        for i in (0..deg).rev() {
            f[i] = (index % p as u64) as u32;
            index /= p as u64;
        }
        f
    }

    /// Trial division by every monic polynomial of degree at most deg/2.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d as u32);
            for idx in 0..count {
                let g = monic_from_index(idx, d, p);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

impl FieldInner {
    fn build(p: u32, m: u32) -> FieldInner {
        let q = p.pow(m);
        let modulus = (0..(p as u64).pow(m))
            .map(|idx| prime_poly::monic_from_index(idx, m as usize, p))
            .find(|f| prime_poly::is_irreducible(f, p))
            .expect("an irreducible polynomial exists in every degree");

        let to_digits = |mut x: u32| -> Vec<u32> {
            let mut d = Vec::with_capacity(m as usize);
            for _ in 0..m {
                d.push(x % p);
                x /= p;
            }
            prime_poly::trim(&mut d);
            d
        };
        let from_digits = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let slow_mul = |x: u32, y: u32| -> u32 {
            let prod = prime_poly::mul(&to_digits(x), &to_digits(y), p);
            from_digits(&prime_poly::rem(&prod, &modulus, p))
        };
        let slow_pow = |x: u32, mut e: u64| -> u32 {
            let (mut r, mut b) = (1u32, x);
            while e > 0 {
                if e & 1 == 1 {
                    r = slow_mul(r, b);
                }
                b = slow_mul(b, b);
                e >>= 1;
            }
            r
        };

        let order = (q - 1) as u64;
        let primes = prime_factors(order);
        let generator = (1..q)
            .find(|&g| primes.iter().all(|&r| slow_pow(g, order / r) != 1))
            .expect("the multiplicative group is cyclic");

        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..n {
            exp[i] = x;
            log[x as usize] = i as u32;
            x = slow_mul(x, generator);
        }
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }
        FieldInner {
            p,
            m,
            q,
            modulus,
            generator,
            exp,
            log,
        }
    }
}

impl FieldSpec {
    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Defining modulus over GF(p), low degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The primitive element with smallest rep.
    pub fn generator(&self) -> u32 {
        self.0.generator
    }

    pub fn is_even(&self) -> bool {
        self.0.p == 2
    }

    pub fn element(&self, rep: u32) -> Result<FieldElement> {
        if rep >= self.0.q {
            return Err(Error::ElementOutOfRange {
                rep: rep as u64,
                q: self.0.q,
            });
        }
        Ok(FieldElement {
            field: self.clone(),
            rep,
        })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            rep: 0,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            rep: 1,
        }
    }

    /// All elements in rep order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.q
    }

    // Raw arithmetic on reps. Callers guarantee reps are in range.

    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        let f = &*self.0;
        if f.p == 2 {
            x ^ y
        } else if f.m == 1 {
            (x + y) % f.p
        } else {
            let (mut x, mut y, mut out, mut place) = (x, y, 0, 1);
            while x > 0 || y > 0 {
                out += ((x % f.p + y % f.p) % f.p) * place;
                x /= f.p;
                y /= f.p;
                place *= f.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, x: u32) -> u32 {
        let f = &*self.0;
        if f.p == 2 {
            x
        } else if f.m == 1 {
            (f.p - x) % f.p
        } else {
            let (mut x, mut out, mut place) = (x, 0, 1);
            while x > 0 {
                out += ((f.p - x % f.p) % f.p) * place;
                x /= f.p;
                place *= f.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        if x == 0 || y == 0 {
            return 0;
        }
        let f = &*self.0;
        f.exp[(f.log[x as usize] + f.log[y as usize]) as usize]
    }

    pub fn inv(&self, x: u32) -> Result<u32> {
        if x == 0 {
            return Err(Error::InverseOfZero);
        }
        let f = &*self.0;
        let n = f.q - 1;
        Ok(f.exp[((n - f.log[x as usize]) % n) as usize])
    }

    pub fn div(&self, x: u32, y: u32) -> Result<u32> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^e`; negative exponents require `x != 0`. `0^0 = 1`.
    pub fn pow(&self, x: u32, e: i64) -> Result<u32> {
        if x == 0 {
            return match e {
                0 => Ok(1),
                e if e > 0 => Ok(0),
                _ => Err(Error::InverseOfZero),
            };
        }
        let n = (self.0.q - 1) as i128;
        let k = (self.log(x) as i128 * e as i128).rem_euclid(n);
        Ok(self.0.exp[k as usize])
    }

    /// Square-and-multiply power for non-negative exponents; agrees with
    /// [`FieldSpec::pow`] and is kept as its cross-check.
    pub fn pow_sqm(&self, x: u32, mut e: u64) -> u32 {
        let (mut r, mut b) = (1, x);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// Discrete log to the base [`FieldSpec::generator`]; `x` must be nonzero.
    #[inline]
    pub fn log(&self, x: u32) -> u32 {
        debug_assert!(x != 0);
        self.0.log[x as usize]
    }

    /// `generator^k`, `k` taken mod q - 1.
    #[inline]
    pub fn exp(&self, k: u64) -> u32 {
        self.0.exp[(k % (self.0.q as u64 - 1)) as usize]
    }

    /// The integer `k` mapped into the prime subfield.
    pub fn from_int(&self, k: i64) -> u32 {
        k.rem_euclid(self.0.p as i64) as u32
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: u32) -> u64 {
        let n = (self.0.q - 1) as u64;
        n / gcd(n, self.log(x) as u64)
    }

    /// True iff -1 is a square: q even, p = 1 mod 4, or p = 3 mod 4 with q a
    /// square.
    pub fn minus_one_is_square(&self) -> bool {
        let p = self.0.p;
        p == 2 || p % 4 == 1 || (p % 4 == 3 && self.0.m % 2 == 0)
    }

    /// The square root of -1 with smallest rep, if one exists.
    pub fn sqrt_of_minus_one(&self) -> Option<u32> {
        let minus_one = self.neg(1);
        self.elements().find(|&x| self.mul(x, x) == minus_one)
    }

    /// Generator of the unique subfield of order p^k (k must divide m).
    pub fn subfield_generator(&self, k: u32) -> u32 {
        assert!(k >= 1 && self.0.m % k == 0, "GF(p^{k}) is not a subfield");
        let sub_order = (self.0.p as u64).pow(k) - 1;
        self.exp((self.0.q as u64 - 1) / sub_order)
    }

    /// Evaluates a polynomial over GF(p) (digits) at `x` in this field.
    fn eval_prime_poly(&self, f: &[u32], x: u32) -> u32 {
        f.iter()
            .rev()
            .fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Embedding of this field into `big`, which must have the same
    /// characteristic and a degree divisible by ours.
    pub fn embedding_into(&self, big: &FieldSpec) -> Result<Embedding> {
        if big.p() != self.p() || big.m() % self.m() != 0 {
            return Err(Error::FieldMismatch {
                left: self.to_string(),
                right: big.to_string(),
            });
        }
        // Root of our modulus in the big field with smallest rep.
        let theta = big
            .elements()
            .find(|&z| big.eval_prime_poly(self.modulus(), z) == 0)
            .expect("the modulus splits in an extension of divisible degree");
        let p = self.p();
        let image: Vec<u32> = self
            .elements()
            .map(|rep| {
                let (mut r, mut acc, mut power) = (rep, 0u32, 1u32);
                while r > 0 {
                    let c = r % p;
                    acc = big.add(acc, big.mul(c, power));
                    power = big.mul(power, theta);
                    r /= p;
                }
                acc
            })
            .collect();
        let preimage = image
            .iter()
            .enumerate()
            .map(|(i, &b)| (b, i as u32))
            .collect();
        Ok(Embedding {
            small: self.clone(),
            big: big.clone(),
            image,
            preimage,
        })
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// An injective field homomorphism GF(q) -> GF(q^k).
#[derive(Clone, Debug)]
pub struct Embedding {
    small: FieldSpec,
    big: FieldSpec,
    image: Vec<u32>,
    preimage: HashMap<u32, u32>,
}

impl Embedding {
    pub fn small(&self) -> &FieldSpec {
        &self.small
    }

    pub fn big(&self) -> &FieldSpec {
        &self.big
    }

    #[inline]
    pub fn map(&self, x: u32) -> u32 {
        self.image[x as usize]
    }

    /// Inverse map, `None` when `y` is outside the image.
    pub fn pull_back(&self, y: u32) -> Option<u32> {
        self.preimage.get(&y).copied()
    }
}

/// A field element bundled with its field; the checked counterpart of the
/// raw `u32` arithmetic on [`FieldSpec`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: FieldSpec,
    rep: u32,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{:?}", self.rep, self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rep(&self) -> u32 {
        self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep == 0
    }

    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            });
        }
        Ok(())
    }

    fn with(&self, rep: u32) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            rep,
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.rep, other.rep)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.rep, other.rep)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.rep, other.rep)))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with(self.field.div(self.rep, other.rep)?))
    }

    pub fn neg(&self) -> FieldElement {
        self.with(self.field.neg(self.rep))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.with(self.field.inv(self.rep)?))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        Ok(self.with(self.field.pow(self.rep, e)?))
    }
}

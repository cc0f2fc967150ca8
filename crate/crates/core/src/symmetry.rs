//! Monomial transforms on coordinates of length `2n` and the dihedral /
//! consta-dihedral invariance checks for self-dual double circulant codes.
//!
//! A transform is a permutation of coordinates together with one nonzero
//! scalar per destination coordinate. Applying `t` to `u` gives
//! `out[j] = scalars[j] * u[perm^{-1}(j)]`, and `s.compose(&t)` is "t first,
//! then s", so `apply(s∘t, u) = apply(s, apply(t, u))`.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::double_circulant::{Codeword, DoubleCirculantCode};
use crate::error::{Error, Result};
use crate::finite_field::FieldSpec;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialTransform {
    /// `perm[i]` is the destination of coordinate `i` (0-indexed).
    perm: Vec<usize>,
    /// Scalar applied at each destination coordinate.
    scalars: Vec<u32>,
    /// `None` for pure permutations, whose scalars are all one.
    field: Option<FieldSpec>,
}

impl fmt::Debug for MonomialTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_notation())?;
        if !self.is_pure_permutation() {
            write!(f, " scalars {:?}", self.scalars)?;
        }
        Ok(())
    }
}

impl Serialize for MonomialTransform {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MonomialTransform", 2)?;
        st.serialize_field("cycles", &self.cycle_notation())?;
        st.serialize_field("scalars", &self.scalars)?;
        st.end()
    }
}

fn check_bijection(perm: &[usize]) -> Result<()> {
    let mut seen = vec![false; perm.len()];
    for &d in perm {
        if d >= perm.len() || seen[d] {
            return Err(Error::Parse(format!("{perm:?} is not a permutation")));
        }
        seen[d] = true;
    }
    Ok(())
}

impl MonomialTransform {
    pub fn identity(len: usize) -> MonomialTransform {
        MonomialTransform {
            perm: (0..len).collect(),
            scalars: vec![1; len],
            field: None,
        }
    }

    pub fn from_perm(perm: Vec<usize>) -> Result<MonomialTransform> {
        check_bijection(&perm)?;
        let len = perm.len();
        Ok(MonomialTransform {
            perm,
            scalars: vec![1; len],
            field: None,
        })
    }

    /// From disjoint cycles in 1-indexed notation, e.g. `[[1, 2, 3], [4, 5, 6]]`.
    pub fn from_cycles(len: usize, cycles: &[Vec<usize>]) -> Result<MonomialTransform> {
        let mut perm: Vec<usize> = (0..len).collect();
        let mut touched = vec![false; len];
        for cyc in cycles {
            for (k, &i) in cyc.iter().enumerate() {
                if i == 0 || i > len || touched[i - 1] {
                    return Err(Error::Parse(format!("bad cycle {cyc:?} for length {len}")));
                }
                touched[i - 1] = true;
                perm[i - 1] = cyc[(k + 1) % cyc.len()] - 1;
            }
        }
        MonomialTransform::from_perm(perm)
    }

    pub fn new(
        field: &FieldSpec,
        perm: Vec<usize>,
        scalars: Vec<u32>,
    ) -> Result<MonomialTransform> {
        check_bijection(&perm)?;
        if scalars.len() != perm.len() {
            return Err(Error::LengthMismatch {
                expected: perm.len(),
                got: scalars.len(),
            });
        }
        if let Some(&bad) = scalars.iter().find(|&&c| c == 0 || c >= field.q()) {
            return Err(Error::ElementOutOfRange {
                rep: bad as u64,
                q: field.q(),
            });
        }
        Ok(MonomialTransform {
            perm,
            scalars,
            field: Some(field.clone()),
        })
    }

    /// Multiplication by a scalar on every coordinate.
    pub fn scalar(field: &FieldSpec, len: usize, c: u32) -> Result<MonomialTransform> {
        MonomialTransform::new(field, (0..len).collect(), vec![c; len])
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn scalars(&self) -> &[u32] {
        &self.scalars
    }

    pub fn is_pure_permutation(&self) -> bool {
        self.scalars.iter().all(|&c| c == 1)
    }

    /// The permutation with scalars dropped.
    pub fn perm_part(&self) -> MonomialTransform {
        MonomialTransform {
            perm: self.perm.clone(),
            scalars: vec![1; self.len()],
            field: None,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &d)| i == d) && self.is_pure_permutation()
    }

    /// Identity permutation with every scalar equal to `c`.
    pub fn is_scalar(&self, c: u32) -> bool {
        self.perm.iter().enumerate().all(|(i, &d)| i == d) && self.scalars.iter().all(|&s| s == c)
    }

    fn merged_field(&self, other: &MonomialTransform) -> Result<Option<FieldSpec>> {
        match (&self.field, &other.field) {
            (Some(a), Some(b)) if a != b => Err(Error::FieldMismatch {
                left: a.to_string(),
                right: b.to_string(),
            }),
            (Some(a), _) | (None, Some(a)) => Ok(Some(a.clone())),
            (None, None) => Ok(None),
        }
    }

    fn inverse_perm(&self) -> Vec<usize> {
        let mut inv = vec![0; self.len()];
        for (i, &d) in self.perm.iter().enumerate() {
            inv[d] = i;
        }
        inv
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &MonomialTransform) -> Result<MonomialTransform> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        let field = self.merged_field(other)?;
        let perm = other.perm.iter().map(|&d| self.perm[d]).collect();
        let inv = self.inverse_perm();
        let scalars = (0..self.len())
            .map(|j| {
                let (a, b) = (self.scalars[j], other.scalars[inv[j]]);
                field.as_ref().map_or(1, |f| f.mul(a, b))
            })
            .collect();
        Ok(MonomialTransform {
            perm,
            scalars,
            field,
        })
    }

    pub fn inverse(&self) -> MonomialTransform {
        let inv = self.inverse_perm();
        let scalars = (0..self.len())
            .map(|j| match &self.field {
                Some(f) => f
                    .inv(self.scalars[self.perm[j]])
                    .expect("scalars are nonzero"),
                None => 1,
            })
            .collect();
        MonomialTransform {
            perm: inv,
            scalars,
            field: self.field.clone(),
        }
    }

    pub fn pow(&self, k: u64) -> MonomialTransform {
        let mut acc = MonomialTransform::identity(self.len());
        acc.field = self.field.clone();
        for _ in 0..k {
            acc = self.compose(&acc).expect("same length and field");
        }
        acc
    }

    pub fn apply(&self, u: &Codeword) -> Result<Codeword> {
        if u.half_len() * 2 != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: 2 * u.half_len(),
            });
        }
        if let Some(f) = &self.field {
            if f != u.field() {
                return Err(Error::FieldMismatch {
                    left: f.to_string(),
                    right: u.field().to_string(),
                });
            }
        }
        let f = u.field();
        let src = u.coords();
        let mut out = vec![0u32; self.len()];
        for (i, &d) in self.perm.iter().enumerate() {
            out[d] = f.mul(self.scalars[d], src[i]);
        }
        Codeword::from_coords(f, &out)
    }

    /// Disjoint cycles of length at least two, 1-indexed, each starting at
    /// its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.perm[start] == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i + 1);
                i = self.perm[i];
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_notation(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        cycles
            .iter()
            .map(|c| {
                format!(
                    "({})",
                    c.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
                )
            })
            .collect()
    }
}

/// `(1,2,...,n)(n+1,...,2n)`.
pub fn tau(n: usize) -> Result<MonomialTransform> {
    if n < 2 {
        return Err(Error::LengthTooSmall { n, min: 2 });
    }
    let perm = (0..2 * n)
        .map(|i| {
            if i < n {
                (i + 1) % n
            } else {
                n + (i - n + 1) % n
            }
        })
        .collect();
    MonomialTransform::from_perm(perm)
}

fn require_odd(n: usize) -> Result<()> {
    if n % 2 == 0 {
        return Err(Error::EvenLength { n });
    }
    if n < 3 {
        return Err(Error::LengthTooSmall { n, min: 3 });
    }
    Ok(())
}

/// `(1,n+1)(2,2n)(3,2n-1)...(n,n+2)`: coordinate `i` of the left half is
/// swapped with coordinate `-i mod n` of the right half.
pub fn pi_sigma(n: usize) -> Result<MonomialTransform> {
    require_odd(n)?;
    let perm = (0..2 * n)
        .map(|i| {
            if i < n {
                n + (n - i) % n
            } else {
                (n - (i - n)) % n
            }
        })
        .collect();
    MonomialTransform::from_perm(perm)
}

/// The two-block reversal fixing 1 and n+1: `i -> -i mod n` inside each half.
pub fn block_reversal(n: usize) -> Result<MonomialTransform> {
    require_odd(n)?;
    let perm = (0..2 * n)
        .map(|i| {
            if i < n {
                (n - i) % n
            } else {
                n + (n - (i - n)) % n
            }
        })
        .collect();
    MonomialTransform::from_perm(perm)
}

/// The antiswap `(x, y) -> (y, -x)`.
pub fn antiswap(n: usize, field: &FieldSpec) -> Result<MonomialTransform> {
    let perm = (0..2 * n)
        .map(|i| if i < n { n + i } else { i - n })
        .collect();
    let minus_one = field.neg(1);
    let scalars = (0..2 * n)
        .map(|j| if j < n { 1 } else { minus_one })
        .collect();
    MonomialTransform::new(field, perm, scalars)
}

/// Block reversal composed with the antiswap; its square is `-1`.
pub fn antiswap_flip(n: usize, field: &FieldSpec) -> Result<MonomialTransform> {
    require_odd(n)?;
    if field.is_even() {
        return Err(Error::WrongParity {
            expected: "odd",
            q: field.q(),
        });
    }
    block_reversal(n)?.compose(&antiswap(n, field)?)
}

/// Indices of generator rows whose image under `t` leaves the code.
pub fn invariance_failures(
    code: &DoubleCirculantCode,
    t: &MonomialTransform,
) -> Result<Vec<usize>> {
    if t.len() != code.length() {
        return Err(Error::LengthMismatch {
            expected: code.length(),
            got: t.len(),
        });
    }
    let mut bad = Vec::new();
    for (i, row) in code.generator_rows().iter().enumerate() {
        if !code.contains(&t.apply(row)?)? {
            bad.push(i);
        }
    }
    Ok(bad)
}

/// `C t = C`, checked on the generator rows.
pub fn invariant_under(code: &DoubleCirculantCode, t: &MonomialTransform) -> Result<bool> {
    Ok(invariance_failures(code, t)?.is_empty())
}

/// Order of the group generated by `gens`, by closure.
pub fn generated_group_order(gens: &[MonomialTransform]) -> Result<usize> {
    let Some(first) = gens.first() else {
        return Ok(1);
    };
    let mut id = MonomialTransform::identity(first.len());
    id.field = gens.iter().find_map(|g| g.field.clone());
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.compose(&x)?;
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    Ok(seen.len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SymmetryKind {
    Dihedral,
    Consta,
}

/// Outcome of a symmetry verification: every asserted relation with its
/// verdict, plus measured facts that are reported but not asserted.
#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    pub kind: SymmetryKind,
    pub n: usize,
    pub q: String,
    pub tau: MonomialTransform,
    pub flip: MonomialTransform,
    pub checks: BTreeMap<String, bool>,
    pub observations: BTreeMap<String, serde_json::Value>,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.checks.values().all(|&ok| ok)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, &ok)| !ok)
            .map(|(k, _)| k.as_str())
            .collect()
    }
}

fn symmetry_preconditions(code: &DoubleCirculantCode, even_q: bool) -> Result<()> {
    let field = code.field();
    if field.is_even() != even_q {
        return Err(Error::WrongParity {
            expected: if even_q { "even" } else { "odd" },
            q: field.q(),
        });
    }
    require_odd(code.n())?;
    if !code.is_self_dual() {
        return Err(Error::NotSelfDual);
    }
    Ok(())
}

/// Invariance under `<tau, pi_sigma>` and the dihedral relations, for q even
/// and n odd.
pub fn verify_dihedral(code: &DoubleCirculantCode) -> Result<SymmetryReport> {
    symmetry_preconditions(code, true)?;
    let n = code.n();
    let t = tau(n)?;
    let s = pi_sigma(n)?;
    let mut checks = BTreeMap::new();
    checks.insert("invariant_tau".to_string(), invariant_under(code, &t)?);
    checks.insert("invariant_pi_sigma".to_string(), invariant_under(code, &s)?);
    checks.insert("tau^n=1".to_string(), t.pow(n as u64).is_identity());
    checks.insert("(pi_sigma)^2=1".to_string(), s.pow(2).is_identity());
    let conj = s.compose(&t)?.compose(&s)?;
    checks.insert(
        "(pi_sigma)tau(pi_sigma)=tau^-1".to_string(),
        conj == t.inverse(),
    );
    let order = generated_group_order(&[t.clone(), s.clone()])?;
    checks.insert("group_order=2n".to_string(), order == 2 * n);
    let observations = BTreeMap::from([("group_order".to_string(), order.into())]);
    Ok(SymmetryReport {
        kind: SymmetryKind::Dihedral,
        n,
        q: code.field().to_string(),
        tau: t,
        flip: s,
        checks,
        observations,
    })
}

/// Invariance under `<tau, m>` with `m` the antiswap flip, `m^2 = -1`, and
/// the dihedral relations on permutation parts, for q odd and n odd.
pub fn verify_constadihedral(code: &DoubleCirculantCode) -> Result<SymmetryReport> {
    symmetry_preconditions(code, false)?;
    let n = code.n();
    let field = code.field();
    let t = tau(n)?;
    let m = antiswap_flip(n, field)?;
    let (pt, pm) = (t.perm_part(), m.perm_part());
    let mut checks = BTreeMap::new();
    checks.insert("invariant_tau".to_string(), invariant_under(code, &t)?);
    checks.insert("invariant_m".to_string(), invariant_under(code, &m)?);
    checks.insert("tau^n=1".to_string(), t.pow(n as u64).is_identity());
    checks.insert("m^2=-1".to_string(), m.pow(2).is_scalar(field.neg(1)));
    let perm_conj = pm.compose(&pt)?.compose(&pm.inverse())?;
    checks.insert(
        "perm(m)perm(tau)perm(m)^-1=perm(tau)^-1".to_string(),
        perm_conj == pt.inverse(),
    );
    let perm_order = generated_group_order(&[pt, pm])?;
    checks.insert("perm_group_order=2n".to_string(), perm_order == 2 * n);

    // Scalar behaviour of the full monomial relations, measured only.
    let conj = m.compose(&t)?.compose(&m.inverse())?;
    let mono_order = generated_group_order(&[t.clone(), m.clone()])?;
    let observations = BTreeMap::from([
        ("perm_group_order".to_string(), perm_order.into()),
        ("monomial_group_order".to_string(), mono_order.into()),
        (
            "m tau m^-1=tau^-1 (with scalars)".to_string(),
            (conj == t.inverse()).into(),
        ),
        (
            "m^2 scalars".to_string(),
            serde_json::to_value(m.pow(2).scalars()).expect("plain vector"),
        ),
    ]);
    Ok(SymmetryReport {
        kind: SymmetryKind::Consta,
        n,
        q: field.to_string(),
        tau: t,
        flip: m,
        checks,
        observations,
    })
}

/// The reversal `i -> n+1-i` (1-indexed) as an `n x n` permutation, used to
/// conjugate a circulant into its transpose.
pub fn reversal_matrix(n: usize) -> Vec<Vec<u32>> {
    (0..n)
        .map(|i| (0..n).map(|j| u32::from(i + j == n - 1)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::make_field;
    use crate::polyring::Poly;

    fn cycles(len: usize, c: &[&[usize]]) -> MonomialTransform {
        MonomialTransform::from_cycles(len, &c.iter().map(|v| v.to_vec()).collect::<Vec<_>>())
            .unwrap()
    }

    fn code(p: u64, m: u32, n: usize, a: &[u32]) -> DoubleCirculantCode {
        let f = make_field(p, m).unwrap();
        DoubleCirculantCode::new(&f, n, Poly::new(&f, a.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(3).unwrap(), cycles(6, &[&[1, 2, 3], &[4, 5, 6]]));
        assert_eq!(tau(5).unwrap().cycle_notation(), "(1,2,3,4,5)(6,7,8,9,10)");
        assert!(tau(3).unwrap().pow(3).is_identity());
        assert!(tau(1).is_err());
    }

    #[test]
    fn pi_sigma_examples() {
        assert_eq!(pi_sigma(3).unwrap().cycle_notation(), "(1,4)(2,6)(3,5)");
        assert_eq!(
            pi_sigma(5).unwrap().cycle_notation(),
            "(1,6)(2,10)(3,9)(4,8)(5,7)"
        );
        assert!(pi_sigma(5).unwrap().pow(2).is_identity());
        assert_eq!(pi_sigma(4).unwrap_err(), Error::EvenLength { n: 4 });
    }

    #[test]
    fn written_relations_hold() {
        for n in [3usize, 5, 7, 9, 11] {
            let t = tau(n).unwrap();
            let s = pi_sigma(n).unwrap();
            // (pi_sigma) tau = (1,n+2)(2,n+1)(3,2n)(4,2n-1)...(n,n+3), written
            // left to right: pi_sigma acts first
            let mut expected = vec![vec![1, n + 2], vec![2, n + 1]];
            for i in 3..=n {
                expected.push(vec![i, 2 * n + 3 - i]);
            }
            assert_eq!(
                t.compose(&s).unwrap(),
                MonomialTransform::from_cycles(2 * n, &expected).unwrap()
            );
            // tau^{-1} = (1,n,n-1,...,2)(n+1,2n,...,n+2)
            let left: Vec<usize> = std::iter::once(1).chain((2..=n).rev()).collect();
            let right: Vec<usize> = std::iter::once(n + 1)
                .chain((n + 2..=2 * n).rev())
                .collect();
            let inv = MonomialTransform::from_cycles(2 * n, &[left, right]).unwrap();
            assert_eq!(s.compose(&t).unwrap().compose(&s).unwrap(), inv);
            assert_eq!(t.inverse(), inv);
        }
    }

    #[test]
    fn pi_sigma_is_block_reversal_then_swap() {
        // sigma swaps the halves; pi reverses within them
        for n in [3usize, 5, 7] {
            let sigma = MonomialTransform::from_cycles(
                2 * n,
                &(1..=n).map(|i| vec![i, n + i]).collect::<Vec<_>>(),
            )
            .unwrap();
            let pi = block_reversal(n).unwrap();
            assert_eq!(pi.compose(&sigma).unwrap(), pi_sigma(n).unwrap());
        }
    }

    #[test]
    fn antiswap_examples() {
        let f5 = make_field(5, 1).unwrap();
        let u = Codeword::new(&f5, vec![1, 2, 3], vec![4, 0, 1]).unwrap();
        let img = antiswap(3, &f5).unwrap().apply(&u).unwrap();
        assert_eq!((img.left(), img.right()), (&[4, 0, 1][..], &[4, 3, 2][..]));
        let e1 = Codeword::new(&f5, vec![1, 0, 0], vec![0, 0, 0]).unwrap();
        let img = antiswap(3, &f5).unwrap().apply(&e1).unwrap();
        assert_eq!(img.coords(), vec![0, 0, 0, 4, 0, 0]);

        let m = antiswap_flip(3, &f5).unwrap();
        let sq = m.pow(2);
        assert!(sq.is_scalar(4));
        assert!(sq.perm_part().is_identity());
        // a^2 = -1 on its own as well
        assert!(antiswap(3, &f5).unwrap().pow(2).is_scalar(4));
        assert!(matches!(
            antiswap_flip(3, &make_field(2, 1).unwrap()),
            Err(Error::WrongParity { .. })
        ));
        assert!(matches!(
            antiswap_flip(4, &f5),
            Err(Error::EvenLength { .. })
        ));
    }

    #[test]
    fn apply_examples() {
        let f2 = make_field(2, 1).unwrap();
        let u = Codeword::new(&f2, vec![1, 0, 0], vec![0, 0, 0]).unwrap();
        assert_eq!(MonomialTransform::identity(6).apply(&u).unwrap(), u);
        assert_eq!(
            tau(3).unwrap().apply(&u).unwrap().coords(),
            vec![0, 1, 0, 0, 0, 0]
        );
        assert!(tau(4).unwrap().apply(&u).is_err());
    }

    #[test]
    fn invariance_examples() {
        let c = code(2, 1, 3, &[1]);
        assert!(invariant_under(&c, &MonomialTransform::identity(6)).unwrap());
        assert!(invariant_under(&c, &tau(3).unwrap()).unwrap());
        // (1,2) moves e1 to e2 on the left only; rows 0 and 1 leave the code
        let swap = cycles(6, &[&[1, 2]]);
        assert_eq!(invariance_failures(&c, &swap).unwrap(), vec![0, 1]);
        assert!(!invariant_under(&c, &swap).unwrap());
    }

    #[test]
    fn compose_and_inverse() {
        let f5 = make_field(5, 1).unwrap();
        let s = MonomialTransform::new(&f5, vec![2, 0, 1, 3], vec![2, 3, 1, 4]).unwrap();
        let t = MonomialTransform::new(&f5, vec![1, 3, 2, 0], vec![1, 2, 2, 3]).unwrap();
        let u = Codeword::new(&f5, vec![1, 2], vec![3, 4]).unwrap();
        let st = s.compose(&t).unwrap();
        assert_eq!(
            st.apply(&u).unwrap(),
            s.apply(&t.apply(&u).unwrap()).unwrap()
        );
        assert!(s.compose(&s.inverse()).unwrap().is_identity());
        assert!(s.inverse().compose(&s).unwrap().is_identity());
        assert!(MonomialTransform::new(&f5, vec![0, 0], vec![1, 1]).is_err());
        assert!(MonomialTransform::new(&f5, vec![0, 1], vec![1, 0]).is_err());
        let f7 = make_field(7, 1).unwrap();
        let other = MonomialTransform::scalar(&f7, 4, 3).unwrap();
        assert!(s.compose(&other).is_err());
    }

    #[test]
    fn reversal_conjugates_circulant_to_transpose() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (p, m) in [(2u64, 1u32), (2, 2), (3, 1), (5, 1), (13, 1)] {
            let f = make_field(p, m).unwrap();
            for n in (3..=11).step_by(2) {
                if n as u32 % f.p() == 0 {
                    continue;
                }
                let a: Vec<u32> = (0..n).map(|_| rng.gen_range(0..f.q())).collect();
                let c = DoubleCirculantCode::new(&f, n, Poly::new(&f, a).unwrap()).unwrap();
                let am = c.circulant();
                let pm = reversal_matrix(n);
                let mul = |x: &Vec<Vec<u32>>, y: &Vec<Vec<u32>>| -> Vec<Vec<u32>> {
                    (0..n)
                        .map(|i| {
                            (0..n)
                                .map(|j| {
                                    (0..n).fold(0, |acc, k| f.add(acc, f.mul(x[i][k], y[k][j])))
                                })
                                .collect()
                        })
                        .collect()
                };
                let pap = mul(&mul(&pm, &am), &pm);
                let at: Vec<Vec<u32>> =
                    (0..n).map(|i| (0..n).map(|j| am[j][i]).collect()).collect();
                assert_eq!(pap, at);
            }
        }
    }

    #[test]
    fn dihedral_small_case() {
        let r = verify_dihedral(&code(2, 1, 3, &[0, 1])).unwrap();
        assert!(r.passed(), "{:?}", r.failed());
        assert_eq!(r.checks.len(), 6);
        let r = verify_dihedral(&code(2, 1, 5, &[0, 0, 1])).unwrap();
        assert_eq!(r.observations["group_order"], 10);
        assert!(matches!(
            verify_dihedral(&code(5, 1, 3, &[2])),
            Err(Error::WrongParity { .. })
        ));
        assert_eq!(
            verify_dihedral(&code(2, 1, 3, &[1, 1])).unwrap_err(),
            Error::NotSelfDual
        );
    }

    #[test]
    fn consta_small_case() {
        let r = verify_constadihedral(&code(5, 1, 3, &[2])).unwrap();
        assert!(r.passed(), "{:?}", r.failed());
        assert!(r.checks["m^2=-1"]);
        assert_eq!(r.observations["perm_group_order"], 6);
    }

    #[test]
    fn non_self_dual_code_fails_invariance() {
        // the flip needs a a* = -1; a = 1 + x over GF(5) is not self-dual
        let c = code(5, 1, 3, &[1, 1]);
        let m = antiswap_flip(3, c.field()).unwrap();
        assert!(!invariant_under(&c, &m).unwrap());
    }

    #[test]
    fn invariance_agrees_with_full_image() {
        // compare against the image of every codeword, for q^n <= 2^12
        for (p, m, n) in [
            (2u64, 1u32, 3usize),
            (2, 1, 5),
            (3, 1, 5),
            (5, 1, 3),
            (2, 2, 5),
        ] {
            let f = make_field(p, m).unwrap();
            let q = f.q() as u128;
            let total = q.pow(n as u32);
            assert!(total <= 1 << 12);
            let ts = vec![
                tau(n).unwrap(),
                pi_sigma(n).unwrap(),
                cycles(2 * n, &[&[1, 2]]),
                MonomialTransform::new(
                    &f,
                    (0..2 * n).map(|i| (i + n) % (2 * n)).collect(),
                    vec![1; 2 * n],
                )
                .unwrap(),
            ];
            let mut ts = ts;
            if !f.is_even() {
                ts.push(antiswap_flip(n, &f).unwrap());
            }
            for idx in (0..total).step_by(7) {
                let c = DoubleCirculantCode::new(&f, n, Poly::from_index(&f, idx)).unwrap();
                let words: Vec<Codeword> = (0..total)
                    .map(|i| c.encode(&Poly::from_index(&f, i).dense(n)).unwrap())
                    .collect();
                let set: HashSet<Vec<u32>> = words.iter().map(|w| w.coords()).collect();
                for t in &ts {
                    let oracle = words
                        .iter()
                        .all(|w| set.contains(&t.apply(w).unwrap().coords()));
                    assert_eq!(invariant_under(&c, t).unwrap(), oracle);
                }
            }
        }
    }
}

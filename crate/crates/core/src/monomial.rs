//! Exponent vectors and the ring they live in.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector of a monomial, one slot per ring variable.
///
/// Comparison methods on the type itself assume equal lengths (they panic
/// otherwise); the free functions [`divides`] and [`join`] check lengths and
/// return an error instead.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multidegree(Vec<u32>);

impl Multidegree {
    pub fn new(exponents: Vec<u32>) -> Self {
        Multidegree(exponents)
    }

    pub fn zero(n: usize) -> Self {
        Multidegree(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Componentwise `self <= other`, i.e. the monomial divides `other`.
    pub fn divides(&self, other: &Multidegree) -> bool {
        assert_eq!(self.len(), other.len(), "multidegree length mismatch");
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise maximum (lcm of monomials).
    pub fn join(&self, other: &Multidegree) -> Multidegree {
        assert_eq!(self.len(), other.len(), "multidegree length mismatch");
        Multidegree(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn join_assign(&mut self, other: &Multidegree) {
        assert_eq!(self.len(), other.len(), "multidegree length mismatch");
        for (a, &b) in self.0.iter_mut().zip(&other.0) {
            *a = (*a).max(b);
        }
    }

    /// `self - other`, or `None` when some coordinate would go negative.
    pub fn checked_sub(&self, other: &Multidegree) -> Option<Multidegree> {
        if self.len() != other.len() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .map(Multidegree)
    }

    pub fn add(&self, other: &Multidegree) -> Multidegree {
        assert_eq!(self.len(), other.len(), "multidegree length mismatch");
        Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Bitmask of the variables with a positive exponent.
    pub fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | (1 << i))
    }
}

impl From<Vec<u32>> for Multidegree {
    fn from(v: Vec<u32>) -> Self {
        Multidegree(v)
    }
}

impl fmt::Debug for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

fn check_len(a: &Multidegree, b: &Multidegree) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}

/// True iff `a <= b` componentwise.
pub fn divides(a: &Multidegree, b: &Multidegree) -> Result<bool> {
    check_len(a, b)?;
    Ok(a.divides(b))
}

/// Componentwise maximum of two multidegrees.
pub fn join(a: &Multidegree, b: &Multidegree) -> Result<Multidegree> {
    check_len(a, b)?;
    Ok(a.join(b))
}

pub fn total_degree(a: &Multidegree) -> u32 {
    a.total_degree()
}

/// Ordered list of variable names. Cheap to clone.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingContext {
    names: Arc<[String]>,
}

impl RingContext {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::with_capacity(names.len());
        for name in names {
            let name = name.as_ref();
            if !is_identifier(name) {
                return Err(Error::InvalidRing(format!("bad variable name `{name}`")));
            }
            if !seen.insert(name) {
                return Err(Error::InvalidRing(format!("duplicate variable `{name}`")));
            }
            out.push(name.to_string());
        }
        if out.len() > 64 {
            return Err(Error::InvalidRing("at most 64 variables are supported".into()));
        }
        Ok(RingContext { names: out.into() })
    }

    /// Ring with variables `x1, ..., xn`.
    pub fn numbered(n: usize) -> Self {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        RingContext::new(&names).expect("generated names are valid")
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl fmt::Debug for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses `x^2*w^2*v^2`-style products into an exponent vector.
///
/// Factors are `var` or `var^k` with `k >= 1`, joined by `*`. The literal `1`
/// is the trivial monomial. Repeated variables accumulate.
pub fn parse_monomial(text: &str, ctx: &RingContext) -> Result<Multidegree> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty monomial".into()));
    }
    let mut exps = vec![0u32; ctx.nvars()];
    if text == "1" {
        return Ok(Multidegree(exps));
    }
    for factor in text.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in `{text}`")));
        }
        let (name, exp) = match factor.split_once('^') {
            Some((name, exp)) => {
                let exp = exp.trim();
                if exp.is_empty() || !exp.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::Parse(format!("malformed exponent `{exp}`")));
                }
                let k: u32 = exp
                    .parse()
                    .map_err(|_| Error::Parse(format!("exponent out of range `{exp}`")))?;
                if k == 0 {
                    return Err(Error::Parse(format!("zero exponent in `{factor}`")));
                }
                (name.trim(), k)
            }
            None => (factor, 1),
        };
        let idx = ctx
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        exps[idx] = exps[idx]
            .checked_add(exp)
            .ok_or_else(|| Error::Parse("exponent overflow".into()))?;
    }
    Ok(Multidegree(exps))
}

/// Inverse of [`parse_monomial`]: variables in ring order, `^1` omitted.
pub fn format_monomial(m: &Multidegree, ctx: &RingContext) -> String {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .zip(ctx.names())
        .filter(|(&e, _)| e > 0)
        .map(|(&e, name)| {
            if e == 1 {
                name.clone()
            } else {
                format!("{name}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring7() -> RingContext {
        RingContext::new(&["x", "y", "z", "u", "v", "w", "a"]).unwrap()
    }

    #[test]
    fn parse_examples() {
        let ctx = ring7();
        assert_eq!(
            parse_monomial("x^2*w^2*v^2", &ctx).unwrap().exponents(),
            &[2, 0, 0, 0, 2, 2, 0]
        );
        let xy = RingContext::new(&["x", "y"]).unwrap();
        assert_eq!(parse_monomial("x", &xy).unwrap().exponents(), &[1, 0]);
        assert_eq!(parse_monomial("1", &xy).unwrap().exponents(), &[0, 0]);
        assert_eq!(parse_monomial("x * y^2 * x", &xy).unwrap().exponents(), &[2, 2]);
    }

    #[test]
    fn parse_errors() {
        let xy = RingContext::new(&["x", "y"]).unwrap();
        assert!(matches!(parse_monomial("q", &xy), Err(Error::UnknownVariable(_))));
        assert!(matches!(parse_monomial("x^0", &xy), Err(Error::Parse(_))));
        assert!(matches!(parse_monomial("x^-1", &xy), Err(Error::Parse(_))));
        assert!(matches!(parse_monomial("x^1.5", &xy), Err(Error::Parse(_))));
        assert!(matches!(parse_monomial("", &xy), Err(Error::Parse(_))));
        assert!(matches!(parse_monomial("x**y", &xy), Err(Error::Parse(_))));
    }

    #[test]
    fn ring_validation() {
        assert!(RingContext::new(&["x", "x"]).is_err());
        assert!(RingContext::new(&[""]).is_err());
        assert!(RingContext::new(&["2x"]).is_err());
    }

    #[test]
    fn divides_examples() {
        let m = |v: &[u32]| Multidegree::new(v.to_vec());
        assert!(divides(&m(&[1, 0]), &m(&[2, 3])).unwrap());
        assert!(!divides(&m(&[2, 0]), &m(&[1, 5])).unwrap());
        assert!(divides(&m(&[2, 3]), &m(&[2, 3])).unwrap());
        assert!(matches!(
            divides(&m(&[1]), &m(&[1, 2])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn join_examples() {
        let m = |v: &[u32]| Multidegree::new(v.to_vec());
        assert_eq!(
            join(&m(&[3, 2, 2, 2, 2, 0, 2]), &m(&[2, 2, 3, 2, 2, 2, 0])).unwrap(),
            m(&[3, 2, 3, 2, 2, 2, 2])
        );
        assert_eq!(join(&m(&[4, 1]), &Multidegree::zero(2)).unwrap(), m(&[4, 1]));
        assert_eq!(
            join(&m(&[5, 5, 5, 5, 0, 0, 0]), &m(&[3, 3, 2, 2, 6, 5, 6])).unwrap(),
            m(&[5, 5, 5, 5, 6, 5, 6])
        );
        assert!(join(&m(&[1]), &m(&[1, 1])).is_err());
    }

    #[test]
    fn total_degree_examples() {
        let m = |v: &[u32]| Multidegree::new(v.to_vec());
        assert_eq!(total_degree(&m(&[2, 0, 0, 0, 2, 2, 0])), 6);
        assert_eq!(total_degree(&Multidegree::zero(5)), 0);
        // a^2 x^3 y^2 u^2 w^2 in the order x,y,z,u,v,w,a
        let g = parse_monomial("a^2*x^3*y^2*u^2*w^2", &ring7()).unwrap();
        assert_eq!(g, m(&[3, 2, 0, 2, 0, 2, 2]));
        assert_eq!(total_degree(&g), 11);
    }

    fn mdeg(n: usize) -> impl Strategy<Value = Multidegree> {
        proptest::collection::vec(0u32..5, n).prop_map(Multidegree::new)
    }

    proptest! {
        #[test]
        fn divides_is_antisymmetric(a in mdeg(4), b in mdeg(4)) {
            prop_assert_eq!(a.divides(&b) && b.divides(&a), a == b);
        }

        #[test]
        fn join_is_least_upper_bound(a in mdeg(4), b in mdeg(4), c in mdeg(4)) {
            let j = a.join(&b);
            prop_assert!(a.divides(&j) && b.divides(&j));
            if a.divides(&c) && b.divides(&c) {
                prop_assert!(j.divides(&c));
            }
            prop_assert_eq!(j.clone(), b.join(&a));
            prop_assert_eq!(j.join(&c), a.join(&b.join(&c)));
            prop_assert_eq!(a.join(&a), a);
        }

        #[test]
        fn format_then_parse_round_trips(a in mdeg(7)) {
            let ctx = ring7();
            prop_assert_eq!(parse_monomial(&format_monomial(&a, &ctx), &ctx).unwrap(), a);
        }
    }
}

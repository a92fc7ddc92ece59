//! Monomial ideals given by their minimal generators.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{format_monomial, parse_monomial, Multidegree, RingContext};

/// A monomial ideal, stored as its minimal generating set.
///
/// Generators keep their input order; that order fixes the face labels and
/// signs of the Taylor complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    ring: RingContext,
    gens: Vec<Multidegree>,
}

/// Keeps the divisibility-minimal elements, first occurrence wins on ties.
pub fn minimalize_generators(gens: &[Multidegree]) -> Vec<Multidegree> {
    let mut out: Vec<Multidegree> = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        let redundant = gens.iter().enumerate().any(|(j, h)| {
            j != i && h.divides(g) && (h != g || j < i)
        });
        if !redundant {
            out.push(g.clone());
        }
    }
    out
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, dropping non-minimal generators.
    pub fn new(ring: RingContext, gens: Vec<Multidegree>) -> Result<Self> {
        for g in &gens {
            if g.len() != ring.nvars() {
                return Err(Error::LengthMismatch {
                    left: g.len(),
                    right: ring.nvars(),
                });
            }
            if g.is_zero() {
                return Err(Error::UnitIdeal);
            }
        }
        let gens = minimalize_generators(&gens);
        Ok(MonomialIdeal { ring, gens })
    }

    pub fn zero(ring: RingContext) -> Self {
        MonomialIdeal {
            ring,
            gens: Vec::new(),
        }
    }

    pub fn from_monomials<S: AsRef<str>>(vars: &[S], monomials: &[S]) -> Result<Self> {
        let ring = RingContext::new(vars)?;
        let gens = monomials
            .iter()
            .map(|m| parse_monomial(m.as_ref(), &ring))
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::new(ring, gens)
    }

    pub fn ring(&self) -> &RingContext {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn generators(&self) -> &[Multidegree] {
        &self.gens
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generator_set(&self) -> BTreeSet<Multidegree> {
        self.gens.iter().cloned().collect()
    }

    /// lcm of all generators (zero vector for the zero ideal).
    pub fn lcm(&self) -> Multidegree {
        let mut l = Multidegree::zero(self.nvars());
        for g in &self.gens {
            l.join_assign(g);
        }
        l
    }

    /// Membership of the monomial with exponent vector `m`.
    pub fn contains(&self, m: &Multidegree) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `I^{<= alpha}`: generated by the minimal generators dividing `alpha`.
    ///
    /// Any monomial of `I` below `alpha` is divisible by such a generator, so
    /// this agrees with the ideal of all monomials of `I` below `alpha`.
    pub fn restrict(&self, alpha: &Multidegree) -> Result<MonomialIdeal> {
        if alpha.len() != self.nvars() {
            return Err(Error::LengthMismatch {
                left: alpha.len(),
                right: self.nvars(),
            });
        }
        Ok(MonomialIdeal {
            ring: self.ring.clone(),
            gens: self.gens.iter().filter(|g| g.divides(alpha)).cloned().collect(),
        })
    }

    /// True iff `I = I^{<= alpha} + I^{<= beta}`.
    pub fn is_covering_pair(&self, alpha: &Multidegree, beta: &Multidegree) -> Result<bool> {
        self.is_covered_by(&[alpha.clone(), beta.clone()])
    }

    /// True iff every minimal generator lies below one of `alphas`.
    pub fn is_covered_by(&self, alphas: &[Multidegree]) -> Result<bool> {
        for a in alphas {
            if a.len() != self.nvars() {
                return Err(Error::LengthMismatch {
                    left: a.len(),
                    right: self.nvars(),
                });
            }
        }
        Ok(self.gens.iter().all(|g| alphas.iter().any(|a| g.divides(a))))
    }

    /// Minimum number of variables meeting the support of every generator.
    pub fn height(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let mut edges: Vec<u64> = self.gens.iter().map(|g| g.support_mask()).collect();
        edges.sort_unstable();
        edges.dedup();
        // supersets of another edge are covered whenever the smaller one is
        let edges: Vec<u64> = edges
            .iter()
            .copied()
            .filter(|&e| !edges.iter().any(|&f| f != e && f & e == f))
            .collect();
        let mut best = self.nvars();
        cover_search(&edges, 0, 0, &mut best);
        Ok(best)
    }

    /// True iff a pure power of every variable is a generator (dim S/I = 0).
    pub fn contains_all_pure_powers(&self) -> bool {
        (0..self.nvars()).all(|i| self.pure_power_exponent(i).is_some())
    }

    /// Exponent of the generator that is a pure power of variable `i`.
    pub fn pure_power_exponent(&self, i: usize) -> Option<u32> {
        self.gens
            .iter()
            .find(|g| g.support_mask() == 1 << i)
            .map(|g| g.exponents()[i])
    }

    /// Parses the line-oriented text format, or the JSON form when the input
    /// starts with `{`.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            let file: IdealJson =
                serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
            return file.into_ideal();
        }
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing `vars:` line".into()))?;
        let vars = header
            .strip_prefix("vars:")
            .ok_or_else(|| Error::Parse(format!("expected `vars:` line, got `{header}`")))?;
        let vars: Vec<&str> = vars.split_whitespace().collect();
        let ring = RingContext::new(&vars)?;
        let gens = lines
            .map(|l| parse_monomial(l, &ring))
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::new(ring, gens)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("vars: {}\n", self.ring.names().join(" "));
        for g in &self.gens {
            s.push_str(&format_monomial(g, &self.ring));
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            vars: self.ring.names().to_vec(),
            gens: self.gens.iter().map(|g| g.exponents().to_vec()).collect(),
        }
    }

    pub fn format_generators(&self) -> Vec<String> {
        self.gens
            .iter()
            .map(|g| format_monomial(g, &self.ring))
            .collect()
    }
}

fn cover_search(edges: &[u64], chosen: u64, depth: usize, best: &mut usize) {
    if depth >= *best {
        return;
    }
    let Some(&edge) = edges.iter().find(|&&e| e & chosen == 0) else {
        *best = depth;
        return;
    };
    let mut bits = edge;
    while bits != 0 {
        let v = bits & bits.wrapping_neg();
        cover_search(edges, chosen | v, depth + 1, best);
        bits &= bits - 1;
    }
}

/// JSON form of an ideal file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub vars: Vec<String>,
    pub gens: Vec<Vec<u32>>,
}

impl IdealJson {
    pub fn into_ideal(self) -> Result<MonomialIdeal> {
        let ring = RingContext::new(&self.vars)?;
        MonomialIdeal::new(ring, self.gens.into_iter().map(Multidegree::new).collect())
    }
}

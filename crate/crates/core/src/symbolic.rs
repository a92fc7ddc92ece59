//! Symbolic consequences of the shift inequalities.
//!
//! A bound `t_k <= t_{i_1} + ... + t_{i_r}` is stored as the multiset of
//! indices `{i_1, ..., i_r}`, a partition of `k`. Starting from the trivial
//! bound `{k}`, two rules generate new ones:
//!
//! * consecutive: `t_k <= t_{k-1} + t_1`, so `P` in `D(k-1)` gives `P + {1}`;
//! * zero-dimensional window: for a valid `p` with window `W`,
//!   `t_k <= max_{i in W} (t_i + t_{k-i})`, so a partition `P` is a bound
//!   for `t_k` when, for every `i` in `W`, `P` splits as `Q + R` with `Q` in
//!   `D(i)` and `R` in `D(k-i)`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Sorted list of indices; `t_k <= sum of t_i over the list`.
pub type Partition = Vec<usize>;

/// A derived inequality `t_lhs <= t_{rhs[0]} + t_{rhs[1]} + ...`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolicBound {
    pub lhs: usize,
    pub rhs: Partition,
}

impl SymbolicBound {
    pub fn render(&self) -> String {
        let terms: Vec<String> = self.rhs.iter().map(|i| format!("t_{i}")).collect();
        format!("t_{} <= {}", self.lhs, terms.join("+"))
    }

    /// Evaluates both sides on a shift profile `t_0, t_1, ...`; `None` if an
    /// index is out of range.
    pub fn evaluate(&self, shifts: &[u32]) -> Option<(u32, u32)> {
        let lhs = *shifts.get(self.lhs)?;
        let mut rhs = 0;
        for &i in &self.rhs {
            rhs += *shifts.get(i)?;
        }
        Some((lhs, rhs))
    }
}

impl std::fmt::Display for SymbolicBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}

/// Canonical text of an inequality: no whitespace, `<=`, sorted right side.
pub fn normalize_inequality(s: &str) -> Result<String> {
    let compact: String = s
        .replace('≤', "<=")
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect();
    let (lhs, rhs) = compact
        .split_once("<=")
        .ok_or_else(|| Error::Parse(format!("no `<=` in `{s}`")))?;
    let index = |term: &str| -> Result<usize> {
        term.strip_prefix("t_")
            .and_then(|i| i.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad term `{term}` in `{s}`")))
    };
    let lhs = index(lhs)?;
    let mut rhs = rhs.split('+').map(index).collect::<Result<Vec<_>>>()?;
    rhs.sort_unstable();
    Ok(SymbolicBound { lhs, rhs }.render())
}

/// Valid `p` for the zero-dimensional bound at index `k` and the index
/// window `[p - (m - k), min(p, floor(k/2))]` of each.
pub fn general_windows(n: usize, m: usize, k: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    if m + 6 > 2 * n || 2 * k < m + 4 || k > n {
        return out;
    }
    for p in (m + 2).saturating_sub(k)..=k.saturating_sub(2) {
        if p + k < m + 2 {
            continue;
        }
        let lo = p + k - m;
        let hi = p.min(k / 2);
        if lo <= hi {
            out.push((p, lo, hi));
        }
    }
    out
}

fn partitions(k: usize, max_part: usize) -> Vec<Partition> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=k.min(max_part)).rev() {
        for mut rest in partitions(k - first, first) {
            rest.push(first);
            out.push(rest);
        }
    }
    for p in &mut out {
        p.sort_unstable();
    }
    out
}

fn remove_sub(p: &[usize], q: &[usize]) -> Option<Partition> {
    let mut rest = p.to_vec();
    for x in q {
        let pos = rest.iter().position(|y| y == x)?;
        rest.remove(pos);
    }
    Some(rest)
}

struct Closure {
    d: Vec<BTreeSet<Partition>>,
}

impl Closure {
    fn build(n: usize, m: usize, a: usize) -> Self {
        let mut d: Vec<BTreeSet<Partition>> = vec![BTreeSet::new(); a + 1];
        d[0].insert(Vec::new());
        for k in 1..=a {
            let mut set = BTreeSet::new();
            set.insert(vec![k]);
            if k >= 2 {
                for p in &d[k - 1] {
                    let mut q = p.clone();
                    q.push(1);
                    q.sort_unstable();
                    set.insert(q);
                }
            }
            let windows = general_windows(n, m, k);
            if !windows.is_empty() {
                for cand in partitions(k, k - 1) {
                    if set.contains(&cand) {
                        continue;
                    }
                    let ok = windows.iter().any(|&(_, lo, hi)| {
                        (lo..=hi).all(|i| splits_into(&d, &cand, i, k - i))
                    });
                    if ok {
                        set.insert(cand);
                    }
                }
            }
            d[k] = set;
        }
        Closure { d }
    }

    /// True iff bound `q` for `t_k` implies bound `p` by substituting a
    /// derived bound for each index of `q`.
    fn expands_to(&self, q: &[usize], p: &[usize]) -> bool {
        match q.split_first() {
            None => p.is_empty(),
            Some((&first, rest)) => self.d[first].iter().any(|piece| {
                remove_sub(p, piece).is_some_and(|left| self.expands_to(rest, &left))
            }),
        }
    }
}

fn splits_into(d: &[BTreeSet<Partition>], cand: &[usize], i: usize, j: usize) -> bool {
    d[i].iter().any(|q| remove_sub(cand, q).is_some_and(|r| d[j].contains(&r)))
}

fn validate(n: usize, m: usize, a: usize) -> Result<()> {
    if n == 0 || a == 0 {
        return Err(Error::Precondition("need n >= 1 and a >= 1".into()));
    }
    if m + 6 > 2 * n {
        return Err(Error::Precondition(format!("m <= 2n - 6 fails: m = {m}, n = {n}")));
    }
    Ok(())
}

fn sort_bounds(bounds: &mut [SymbolicBound]) {
    bounds.sort_by(|x, y| x.rhs.len().cmp(&y.rhs.len()).then_with(|| x.rhs.cmp(&y.rhs)));
}

/// Every bound `t_a <= sum t_{i_k}` with all `i_k < a` in the closure of the
/// consecutive and zero-dimensional rules for `n` variables and `m`
/// generators, including those implied by stronger ones.
pub fn derive_all_symbolic_bounds(n: usize, m: usize, a: usize) -> Result<Vec<SymbolicBound>> {
    validate(n, m, a)?;
    let closure = Closure::build(n, m, a);
    let mut out: Vec<SymbolicBound> = closure.d[a]
        .iter()
        .filter(|p| p.iter().all(|&i| i < a))
        .map(|p| SymbolicBound { lhs: a, rhs: p.clone() })
        .collect();
    sort_bounds(&mut out);
    Ok(out)
}

/// The bounds of [`derive_all_symbolic_bounds`] that are not obtained from
/// another one by substituting derived bounds for its indices.
pub fn derive_symbolic_bounds(n: usize, m: usize, a: usize) -> Result<Vec<SymbolicBound>> {
    validate(n, m, a)?;
    let closure = Closure::build(n, m, a);
    let candidates: Vec<&Partition> = closure.d[a].iter().filter(|p| p.iter().all(|&i| i < a)).collect();
    let mut out: Vec<SymbolicBound> = candidates
        .iter()
        .filter(|p| {
            !candidates
                .iter()
                .any(|q| q != *p && closure.expands_to(q, p))
        })
        .map(|p| SymbolicBound {
            lhs: a,
            rhs: (*p).clone(),
        })
        .collect();
    sort_bounds(&mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rendered(n: usize, m: usize, a: usize) -> Vec<String> {
        derive_symbolic_bounds(n, m, a)
            .unwrap()
            .iter()
            .map(|b| b.render())
            .collect()
    }

    #[test]
    fn seven_variables_eight_generators() {
        let r = rendered(7, 8, 6);
        assert!(r.contains(&"t_6 <= t_1+t_2+t_3".to_string()), "{r:?}");
        assert!(r.contains(&"t_6 <= t_1+t_5".to_string()));
        assert!(!r.iter().any(|s| s.contains("t_6 <= t_1+t_1")));
    }

    #[test]
    fn index_seven() {
        let target = "t_7 <= t_1+t_2+t_4".to_string();
        for n in 6..=20 {
            for m in 6..=(2 * n - 6).min(10) {
                let all: Vec<String> = derive_all_symbolic_bounds(n, m, 7)
                    .unwrap()
                    .iter()
                    .map(|b| b.render())
                    .collect();
                assert!(all.contains(&target), "n={n} m={m}");
            }
            if n >= 8 {
                assert!(rendered(n, 10, 7).contains(&target));
            }
        }
        assert_eq!(rendered(7, 8, 7), vec!["t_7 <= t_1+t_6", "t_7 <= t_3+t_4"]);
        assert_eq!(rendered(12, 11, 7), vec!["t_7 <= t_1+t_6"]);
    }

    #[test]
    fn minimal_bounds_are_derived() {
        for (n, m, a) in [(7, 8, 6), (7, 7, 7), (10, 10, 8)] {
            let all = derive_all_symbolic_bounds(n, m, a).unwrap();
            for b in derive_symbolic_bounds(n, m, a).unwrap() {
                assert!(all.contains(&b));
            }
        }
    }

    #[test]
    fn small_indices() {
        assert_eq!(rendered(6, 6, 2), vec!["t_2 <= t_1+t_1"]);
        assert!(rendered(6, 6, 1).is_empty());
        assert_eq!(rendered(6, 6, 3), vec!["t_3 <= t_1+t_2"]);
    }

    #[test]
    fn rejects_too_many_generators() {
        assert!(derive_symbolic_bounds(7, 9, 6).is_err());
        assert!(derive_symbolic_bounds(0, 0, 1).is_err());
    }

    #[test]
    fn windows() {
        assert_eq!(general_windows(7, 8, 6), vec![(4, 2, 3)]);
        assert_eq!(general_windows(7, 8, 7), vec![(3, 2, 3), (4, 3, 3)]);
        assert!(general_windows(7, 8, 5).is_empty());
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_inequality("t_6 ≤ t_3 + t_1+t_2").unwrap(), "t_6 <= t_1+t_2+t_3");
        assert_eq!(normalize_inequality("t_7<=t_4+t_2+t_1").unwrap(), "t_7 <= t_1+t_2+t_4");
        assert!(normalize_inequality("t_7 = t_1").is_err());
        assert!(normalize_inequality("t_7 <= s_1").is_err());
    }

    #[test]
    fn evaluation() {
        let b = SymbolicBound { lhs: 4, rhs: vec![2, 2] };
        assert_eq!(b.evaluate(&[0, 11, 13, 15, 16]), Some((16, 26)));
        assert_eq!(b.evaluate(&[0, 1]), None);
    }
}

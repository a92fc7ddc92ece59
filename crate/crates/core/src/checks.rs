//! Inequalities between maximal shifts, evaluated on concrete ideals.
//!
//! Every check produces [`InequalityReport`]s. Reports marked `proven` come
//! from results known to hold for every monomial ideal; a failing proven report means a bug
//! in this crate. Plain subadditivity of a shift profile is not proven for
//! minimal resolutions and is reported without that flag.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::betti::{lcm_lattice, multigraded_betti_with_cap, BettiTable};
use crate::complex::ShiftProfile;
use crate::error::{Error, Result};
use crate::faces::DEFAULT_GENERATOR_CAP;
use crate::field::FieldSpec;
use crate::ideal::MonomialIdeal;
use crate::monomial::Multidegree;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub name: String,
    pub params: BTreeMap<String, Value>,
    pub lhs: u32,
    pub rhs: u32,
    pub holds: bool,
    pub proven: bool,
    /// Multidegrees realising the shifts on the left-hand side.
    pub witnesses: Vec<Multidegree>,
    /// Index pairs `(i, j)` attaining the right-hand side (all ties).
    pub splits: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl InequalityReport {
    pub fn new(name: &str, lhs: u32, rhs: u32, proven: bool) -> Self {
        InequalityReport {
            name: name.to_string(),
            params: BTreeMap::new(),
            lhs,
            rhs,
            holds: lhs <= rhs,
            proven,
            witnesses: Vec::new(),
            splits: Vec::new(),
            note: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Proven result that fails: always an implementation bug.
    pub fn is_bug(&self) -> bool {
        self.proven && !self.holds
    }
}

impl fmt::Display for InequalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={}", v.to_string().replace('"', "")))
            .collect();
        write!(
            f,
            "{:<18} {:<28} {:>4} <= {:<4} {}",
            self.name,
            params.join(" "),
            self.lhs,
            self.rhs,
            if self.holds { "holds" } else { "VIOLATED" }
        )?;
        if !self.splits.is_empty() {
            let s: Vec<String> = self.splits.iter().map(|(i, j)| format!("({i},{j})")).collect();
            write!(f, " via {}", s.join(" "))?;
        }
        if let Some(note) = &self.note {
            write!(f, " [{note}]")?;
        }
        Ok(())
    }
}

/// Betti table and shifts of one ideal, plus a cache of projective
/// dimensions of its restrictions.
pub struct Analysis {
    ideal: MonomialIdeal,
    field: FieldSpec,
    betti: BettiTable,
    shifts: ShiftProfile,
    cap: usize,
    restricted: Mutex<HashMap<Vec<Multidegree>, usize>>,
}

impl Analysis {
    pub fn new(ideal: MonomialIdeal, field: FieldSpec) -> Result<Self> {
        Self::with_cap(ideal, field, DEFAULT_GENERATOR_CAP)
    }

    pub fn with_cap(ideal: MonomialIdeal, field: FieldSpec, cap: usize) -> Result<Self> {
        let betti = multigraded_betti_with_cap(&ideal, field, cap)?;
        let shifts = betti.shift_profile();
        Ok(Analysis {
            ideal,
            field,
            betti,
            shifts,
            cap,
            restricted: Mutex::new(HashMap::new()),
        })
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn betti(&self) -> &BettiTable {
        &self.betti
    }

    pub fn shifts(&self) -> &ShiftProfile {
        &self.shifts
    }

    pub fn projdim(&self) -> usize {
        self.shifts.projdim
    }

    fn t(&self, a: usize) -> u32 {
        self.shifts.t(a).unwrap_or(0)
    }

    /// `projdim S/I^{<= alpha}`, computed from the restricted ideal itself.
    pub fn restricted_projdim(&self, alpha: &Multidegree) -> Result<usize> {
        let sub = self.ideal.restrict(alpha)?;
        let key = sub.generators().to_vec();
        if let Some(&p) = self.restricted.lock().expect("cache lock").get(&key) {
            return Ok(p);
        }
        let p = multigraded_betti_with_cap(&sub, self.field, self.cap)?.projdim();
        self.restricted.lock().expect("cache lock").insert(key, p);
        Ok(p)
    }

    fn witness(&self, a: usize) -> Vec<Multidegree> {
        self.betti.shift_witness(a).into_iter().collect()
    }

    /// `max { t_i + t_{a-i} : i in indices }` with every maximizing split.
    fn best_split(&self, a: usize, indices: impl Iterator<Item = usize>) -> Option<(u32, Vec<(usize, usize)>)> {
        let mut best: Option<(u32, Vec<(usize, usize)>)> = None;
        for i in indices {
            let v = self.t(i) + self.t(a - i);
            match &mut best {
                Some((b, splits)) if *b == v => splits.push((i, a - i)),
                Some((b, _)) if *b > v => {}
                _ => best = Some((v, vec![(i, a - i)])),
            }
        }
        best
    }
}

/// `t_{a+b} <= t_a + t_b` for all `1 <= a <= b`, `a + b <= p`.
pub fn check_subadditivity_profile(t: &ShiftProfile) -> Vec<InequalityReport> {
    let p = t.projdim;
    let mut out = Vec::new();
    for a in 1..=p {
        for b in a..=p.saturating_sub(a) {
            let mut r = InequalityReport::new("subadditivity", t.shifts[a + b], t.shifts[a] + t.shifts[b], false)
                .param("a", a)
                .param("b", b);
            r.splits = vec![(a, b)];
            out.push(r);
        }
    }
    out
}

/// `t_a <= t_{a-1} + t_1` for `a = 1..=p`.
pub fn check_consecutive(an: &Analysis) -> Vec<InequalityReport> {
    (1..=an.projdim())
        .map(|a| {
            let mut r = InequalityReport::new("consecutive", an.t(a), an.t(a - 1) + an.t(1), true)
                .param("a", a);
            r.witnesses = an.witness(a);
            r.splits = vec![(a - 1, 1)];
            r
        })
        .collect()
}

/// `t_p <= t_{p-1} + t_1` at `p = projdim S/I`.
pub fn check_top(an: &Analysis) -> Result<InequalityReport> {
    let p = an.projdim();
    if p == 0 {
        return Err(Error::ZeroIdeal);
    }
    let mut r = InequalityReport::new("top", an.t(p), an.t(p - 1) + an.t(1), true).param("p", p);
    r.witnesses = an.witness(p);
    r.splits = vec![(p - 1, 1)];
    Ok(r)
}

fn covering_dims(an: &Analysis, alpha: &Multidegree, beta: &Multidegree) -> Result<(usize, usize)> {
    if !an.ideal.is_covering_pair(alpha, beta)? {
        return Err(Error::NotCoveringPair);
    }
    Ok((an.restricted_projdim(alpha)?, an.restricted_projdim(beta)?))
}

/// Projective-dimension bound and shift bounds for a covering pair.
///
/// With `p`, `q` the projective dimensions of `S/I^{<= alpha}` and
/// `S/I^{<= beta}`: `projdim S/I <= p + q`, and for `1 <= a <= projdim S/I`,
/// `t_a <= max { t_i + t_j : i + j = a, i <= p, j <= q }`.
pub fn check_covering(an: &Analysis, alpha: &Multidegree, beta: &Multidegree) -> Result<Vec<InequalityReport>> {
    let (p, q) = covering_dims(an, alpha, beta)?;
    let pair = |r: InequalityReport| {
        r.param("alpha", alpha.to_string())
            .param("beta", beta.to_string())
            .param("p", p)
            .param("q", q)
    };
    let mut out = vec![pair(InequalityReport::new("covering.projdim", an.projdim() as u32, (p + q) as u32, true))];
    for a in 1..=an.projdim() {
        let lo = a.saturating_sub(q);
        let hi = p.min(a);
        let mut r = match an.best_split(a, lo..=hi) {
            Some((rhs, splits)) => {
                let mut r = InequalityReport::new("covering", an.t(a), rhs, true);
                r.splits = splits;
                r
            }
            None => {
                let mut r = InequalityReport::new("covering", an.t(a), 0, true)
                    .with_note("no admissible split");
                r.holds = false;
                r
            }
        };
        r.witnesses = an.witness(a);
        out.push(pair(r.param("a", a)));
    }
    Ok(out)
}

/// `t_a <= max { t_i + t_{a-i} : p - s <= i <= p }` with `s = p + q - a`.
pub fn check_range(an: &Analysis, alpha: &Multidegree, beta: &Multidegree, a: usize) -> Result<InequalityReport> {
    let (p, q) = covering_dims(an, alpha, beta)?;
    if a == 0 || a > p + q || a > an.projdim() {
        return Err(Error::Precondition(format!(
            "need 1 <= a <= min(p + q, projdim) = {}, got {a}",
            (p + q).min(an.projdim())
        )));
    }
    let s = p + q - a;
    let lo = p.saturating_sub(s);
    let hi = p.min(a);
    let (rhs, splits) = an
        .best_split(a, lo..=hi)
        .ok_or_else(|| Error::Inconsistent("empty index window".into()))?;
    let mut r = InequalityReport::new("range", an.t(a), rhs, true)
        .param("a", a)
        .param("p", p)
        .param("q", q)
        .param("s", s)
        .param("window", format!("[{lo},{hi}]"));
    r.splits = splits;
    r.witnesses = an.witness(a);
    Ok(r)
}

/// The covering pair used for the zero-dimensional bound: `alpha` holds the
/// pure-power exponents of the first `p` variables, `beta` is the lcm of the
/// remaining generators.
pub fn general_covering_pair(ideal: &MonomialIdeal, p: usize) -> Result<(Multidegree, Multidegree)> {
    let n = ideal.nvars();
    if p > n {
        return Err(Error::Precondition(format!("p = {p} exceeds n = {n}")));
    }
    let mut alpha = vec![0u32; n];
    for (i, slot) in alpha.iter_mut().enumerate().take(p) {
        *slot = ideal
            .pure_power_exponent(i)
            .ok_or_else(|| Error::Precondition(format!("no pure power of variable {}", i + 1)))?;
    }
    let alpha = Multidegree::new(alpha);
    let mut beta = Multidegree::zero(n);
    for g in ideal.generators() {
        let mask = g.support_mask();
        let is_leading_pure_power = mask.count_ones() == 1 && (mask.trailing_zeros() as usize) < p;
        if !is_leading_pure_power {
            beta.join_assign(g);
        }
    }
    Ok((alpha, beta))
}

/// Hypotheses of the zero-dimensional bound for `(a, p)`; one message per
/// failed condition.
pub fn general_preconditions(ideal: &MonomialIdeal, a: usize, p: usize) -> Vec<String> {
    let n = ideal.nvars();
    let m = ideal.num_generators();
    let mut failed = Vec::new();
    if !ideal.contains_all_pure_powers() {
        failed.push("dim S/I = 0 fails: some variable has no pure power".to_string());
    }
    if m + 6 > 2 * n {
        failed.push(format!("m <= 2n - 6 fails: m = {m}, n = {n}"));
    }
    if 2 * a < m + 4 {
        failed.push(format!("(m + 4)/2 <= a fails: m = {m}, a = {a}"));
    }
    if a > n {
        failed.push(format!("a <= n fails: a = {a}, n = {n}"));
    }
    if p + a < m + 2 || p + 2 > a {
        failed.push(format!("p in [m - a + 2, a - 2] fails: p = {p}, m = {m}, a = {a}"));
    }
    failed
}

/// Zero-dimensional bound
/// `t_a <= min { t_1 + t_{a-1}, max { t_i + t_{a-i} : p - (m - a) <= i <= min(p, floor(a/2)) } }`.
///
/// An empty window leaves only the first term.
pub fn check_general(an: &Analysis, a: usize, p: usize) -> Result<InequalityReport> {
    let ideal = &an.ideal;
    let failed = general_preconditions(ideal, a, p);
    if !failed.is_empty() {
        return Err(Error::Precondition(failed.join("; ")));
    }
    let m = ideal.num_generators();
    let (alpha, beta) = general_covering_pair(ideal, p)?;
    let (pa, qb) = covering_dims(an, &alpha, &beta)?;
    let consecutive = an.t(1) + an.t(a - 1);
    let lo = p + a - m;
    let hi = p.min(a / 2);
    let window = if lo <= hi { an.best_split(a, lo..=hi) } else { None };
    let mut r = match window {
        Some((w, splits)) if w < consecutive => {
            let mut r = InequalityReport::new("general", an.t(a), w, true);
            r.splits = splits;
            r
        }
        Some((w, mut splits)) => {
            let mut r = InequalityReport::new("general", an.t(a), consecutive, true);
            if w == consecutive {
                splits.push((1, a - 1));
                r.splits = splits;
            } else {
                r.splits = vec![(1, a - 1)];
            }
            r
        }
        None => {
            let mut r = InequalityReport::new("general", an.t(a), consecutive, true)
                .with_note("empty index window");
            r.splits = vec![(1, a - 1)];
            r
        }
    };
    r.witnesses = an.witness(a);
    Ok(r.param("a", a)
        .param("p", p)
        .param("m", m)
        .param("window", format!("[{lo},{hi}]"))
        .param("alpha", alpha.to_string())
        .param("beta", beta.to_string())
        .param("projdim_alpha", pa)
        .param("projdim_beta", qb))
}

/// Every `(a, p)` satisfying the hypotheses of [`check_general`].
pub fn general_instances(ideal: &MonomialIdeal) -> Vec<(usize, usize)> {
    let n = ideal.nvars();
    let mut out = Vec::new();
    for a in 1..=n {
        for p in 0..=a {
            if general_preconditions(ideal, a, p).is_empty() {
                out.push((a, p));
            }
        }
    }
    out
}

/// `t_{a_1 + ... + a_r} <= t_{a_1} + ... + t_{a_r}` for Betti support points
/// `(a_i, alpha_i)` whose restrictions cover `I`.
pub fn check_multiple(an: &Analysis, covers: &[(usize, Multidegree)]) -> Result<InequalityReport> {
    if covers.is_empty() {
        return Err(Error::Precondition("empty cover list".into()));
    }
    for (a, alpha) in covers {
        if an.betti.get(*a, alpha) == 0 {
            return Err(Error::Precondition(format!(
                "{alpha} is not a multidegree of a basis element in homological degree {a}"
            )));
        }
    }
    let alphas: Vec<Multidegree> = covers.iter().map(|(_, m)| m.clone()).collect();
    if !an.ideal.is_covered_by(&alphas)? {
        return Err(Error::NotCoveringPair);
    }
    let total: usize = covers.iter().map(|(a, _)| a).sum();
    let rhs: u32 = covers.iter().map(|(a, _)| an.t(*a)).sum();
    let indices: Vec<usize> = covers.iter().map(|(a, _)| *a).collect();
    let mut r = if total > an.projdim() {
        InequalityReport::new("multiple", 0, rhs, true).with_note("sum of indices exceeds projdim; vacuous")
    } else {
        let mut r = InequalityReport::new("multiple", an.t(total), rhs, true);
        r.witnesses = an.witness(total);
        r
    };
    r = r
        .param("indices", json!(indices))
        .param("alphas", json!(alphas.iter().map(|a| a.to_string()).collect::<Vec<_>>()));
    Ok(r)
}

/// All unordered covering pairs `(alpha, beta)`, `alpha <= beta` in lex
/// order, drawn from the Betti support at `at`, or from the lcm lattice.
pub fn find_covering_pairs(an: &Analysis, at: Option<usize>) -> Result<Vec<(Multidegree, Multidegree)>> {
    let candidates: Vec<Multidegree> = match at {
        Some(a) => an.betti.support(a),
        None => lcm_lattice(&an.ideal)?.into_iter().collect(),
    };
    Ok(covering_pairs_among(&an.ideal, &candidates))
}

pub fn covering_pairs_among(ideal: &MonomialIdeal, candidates: &[Multidegree]) -> Vec<(Multidegree, Multidegree)> {
    let mut sorted = candidates.to_vec();
    sorted.sort();
    sorted.dedup();
    let gens = ideal.generators();
    // generators below each candidate, as bitmasks
    let below: Vec<u64> = sorted
        .iter()
        .map(|c| {
            gens.iter()
                .enumerate()
                .filter(|(_, g)| g.divides(c))
                .fold(0u64, |m, (i, _)| m | (1 << i))
        })
        .collect();
    let full = if gens.len() == 64 { u64::MAX } else { (1u64 << gens.len()) - 1 };
    let mut out = Vec::new();
    for i in 0..sorted.len() {
        for j in i..sorted.len() {
            if below[i] | below[j] == full {
                out.push((sorted[i].clone(), sorted[j].clone()));
            }
        }
    }
    out
}

/// Drops pairs that are componentwise above another pair in the list.
pub fn minimal_covering_pairs(pairs: &[(Multidegree, Multidegree)]) -> Vec<(Multidegree, Multidegree)> {
    let dominated = |(a, b): &(Multidegree, Multidegree)| {
        pairs.iter().any(|(c, d)| {
            (c, d) != (a, b) && ((c.divides(a) && d.divides(b)) || (c.divides(b) && d.divides(a)))
        })
    };
    pairs.iter().filter(|p| !dominated(p)).cloned().collect()
}

/// Pairs of Betti support points `((a, alpha), (b, beta))` whose
/// restrictions cover the ideal.
pub fn covering_support_pairs(an: &Analysis) -> Vec<[(usize, Multidegree); 2]> {
    let support: Vec<(usize, Multidegree)> = an
        .betti
        .entries()
        .keys()
        .filter(|(a, _)| *a >= 1)
        .cloned()
        .collect();
    let gens = an.ideal.generators();
    let below: Vec<u64> = support
        .iter()
        .map(|(_, c)| {
            gens.iter()
                .enumerate()
                .filter(|(_, g)| g.divides(c))
                .fold(0u64, |m, (i, _)| m | (1 << i))
        })
        .collect();
    let full = if gens.len() == 64 { u64::MAX } else { (1u64 << gens.len()) - 1 };
    let mut out = Vec::new();
    for i in 0..support.len() {
        for j in i..support.len() {
            if below[i] | below[j] == full {
                out.push([support[i].clone(), support[j].clone()]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(v: &[u32]) -> Multidegree {
        Multidegree::new(v.to_vec())
    }

    fn analysis(text: &str) -> Analysis {
        Analysis::new(MonomialIdeal::parse(text).unwrap(), FieldSpec::Rationals).unwrap()
    }

    fn example1() -> Analysis {
        analysis(include_str!("../fixtures/example1.ideal"))
    }

    fn example2() -> Analysis {
        analysis(include_str!("../fixtures/example2.ideal"))
    }

    fn koszul() -> Analysis {
        analysis(include_str!("../fixtures/koszul2.ideal"))
    }

    #[test]
    fn subadditivity_profile_examples() {
        let reports = check_subadditivity_profile(&ShiftProfile::new(vec![0, 11, 13, 15, 16]));
        assert!(reports.iter().all(|r| r.holds));
        let r22 = reports.iter().find(|r| r.splits == vec![(2, 2)]).unwrap();
        assert_eq!((r22.lhs, r22.rhs), (16, 26));

        let bad = check_subadditivity_profile(&ShiftProfile::new(vec![0, 2, 3, 7]));
        let violated: Vec<_> = bad.iter().filter(|r| !r.holds).collect();
        assert_eq!(violated.len(), 1);
        assert_eq!(violated[0].splits, vec![(1, 2)]);
        assert_eq!((violated[0].lhs, violated[0].rhs), (7, 5));
        assert!(!violated[0].is_bug());

        assert!(check_subadditivity_profile(&ShiftProfile::new(vec![0])).is_empty());
    }

    #[test]
    fn consecutive_examples() {
        let r = check_consecutive(&example2());
        let pairs: Vec<(u32, u32)> = r.iter().map(|r| (r.lhs, r.rhs)).collect();
        assert_eq!(pairs, vec![(11, 11), (13, 22), (15, 24), (16, 26)]);
        assert!(r.iter().all(|r| r.holds));

        let k = check_consecutive(&koszul());
        assert_eq!((k[1].lhs, k[1].rhs), (2, 2));
    }

    #[test]
    fn top_examples() {
        let r = check_top(&example2()).unwrap();
        assert_eq!((r.lhs, r.rhs), (16, 26));
        let k = check_top(&koszul()).unwrap();
        assert_eq!((k.lhs, k.rhs), (2, 2));
        let z = Analysis::new(
            MonomialIdeal::zero(crate::monomial::RingContext::numbered(2)),
            FieldSpec::Rationals,
        )
        .unwrap();
        assert_eq!(check_top(&z), Err(Error::ZeroIdeal));
    }

    #[test]
    fn covering_example1() {
        let an = example1();
        let alpha = md(&[5, 5, 5, 5, 0, 0, 0]);
        let beta = md(&[3, 3, 2, 2, 6, 5, 6]);
        let reports = check_covering(&an, &alpha, &beta).unwrap();
        assert!(reports.iter().all(|r| r.holds));
        let projdim = &reports[0];
        assert_eq!((projdim.lhs, projdim.rhs), (7, 9));
        assert_eq!(projdim.params["p"], json!(4));
        assert_eq!(projdim.params["q"], json!(5));
        let a7 = reports.iter().find(|r| r.params.get("a") == Some(&json!(7))).unwrap();
        let t = an.shifts();
        let expected = (t.shifts[2] + t.shifts[5]).max(t.shifts[3] + t.shifts[4]);
        assert_eq!(a7.rhs, expected);
        assert!(a7.splits.iter().all(|(i, j)| [(2, 5), (3, 4), (4, 3)].contains(&(*i, *j))));

        let r = check_range(&an, &alpha, &beta, 7).unwrap();
        assert_eq!(r.params["s"], json!(2));
        assert_eq!(r.params["window"], json!("[2,4]"));
        assert_eq!(r.rhs, a7.rhs);
    }

    #[test]
    fn range_single_split_at_top() {
        let an = example2();
        let alpha = md(&[3, 2, 2, 2, 2, 0, 2]);
        let beta = md(&[2, 2, 3, 2, 2, 2, 0]);
        let reports = check_covering(&an, &alpha, &beta).unwrap();
        let p = reports[0].params["p"].as_u64().unwrap() as usize;
        let q = reports[0].params["q"].as_u64().unwrap() as usize;
        if p + q <= an.projdim() {
            let r = check_range(&an, &alpha, &beta, p + q).unwrap();
            assert_eq!(r.params["s"], json!(0));
            assert_eq!(r.splits, vec![(p, q)]);
        }
        for (a, covering) in reports.iter().enumerate().take(an.projdim().min(p + q) + 1).skip(1) {
            let r = check_range(&an, &alpha, &beta, a).unwrap();
            assert_eq!(r.rhs, covering.rhs);
        }
    }

    #[test]
    fn degenerate_covering_pair() {
        let an = example2();
        let l = an.ideal().lcm();
        let reports = check_covering(&an, &l, &l).unwrap();
        assert!(reports.iter().all(|r| r.holds));
        let z = Multidegree::zero(7);
        assert_eq!(check_covering(&an, &z, &z), Err(Error::NotCoveringPair));
    }

    #[test]
    fn general_fixture() {
        let an = analysis(include_str!("../fixtures/general7.ideal"));
        assert_eq!(general_instances(an.ideal()), vec![(6, 4), (7, 3), (7, 4), (7, 5)]);
        for (a, p) in general_instances(an.ideal()) {
            assert!(check_general(&an, a, p).unwrap().holds);
        }
        let r = check_general(&an, 6, 4).unwrap();
        assert!(r.holds);
        assert_eq!(r.params["window"], json!("[2,3]"));
        let t = an.shifts();
        let window = (t.shifts[2] + t.shifts[4]).max(t.shifts[3] + t.shifts[3]);
        assert_eq!(r.rhs, window.min(t.shifts[1] + t.shifts[5]));
        assert_eq!(r.params["projdim_alpha"], json!(4));
    }

    #[test]
    fn general_rejects_example1() {
        let an = example1();
        match check_general(&an, 7, 4) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("m <= 2n - 6")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(general_instances(an.ideal()).is_empty());
    }

    #[test]
    fn multiple_example2() {
        let an = example2();
        let covers = vec![(2, md(&[3, 2, 2, 2, 2, 0, 2])), (2, md(&[2, 2, 3, 2, 2, 2, 0]))];
        let r = check_multiple(&an, &covers).unwrap();
        assert_eq!((r.lhs, r.rhs), (16, 26));
        assert!(r.holds);

        let top = vec![(4, an.ideal().lcm())];
        let r = check_multiple(&an, &top).unwrap();
        assert_eq!((r.lhs, r.rhs), (16, 16));

        let not_support = vec![(1, md(&[3, 2, 2, 2, 2, 0, 2]))];
        assert!(matches!(check_multiple(&an, &not_support), Err(Error::Precondition(_))));
        let not_cover = vec![(2, md(&[3, 2, 2, 2, 2, 0, 2]))];
        assert_eq!(check_multiple(&an, &not_cover), Err(Error::NotCoveringPair));
    }

    #[test]
    fn find_pairs_example2() {
        let an = example2();
        let pairs = find_covering_pairs(&an, Some(2)).unwrap();
        assert!(pairs.contains(&(md(&[2, 2, 3, 2, 2, 2, 0]), md(&[3, 2, 2, 2, 2, 0, 2]))));
        let mut sorted = pairs.clone();
        sorted.sort();
        assert_eq!(sorted, pairs);
    }

    #[test]
    fn find_pairs_principal() {
        let an = analysis("vars: x y\nx^2*y\n");
        let pairs = find_covering_pairs(&an, None).unwrap();
        assert_eq!(pairs, vec![(md(&[2, 1]), md(&[2, 1]))]);
        assert_eq!(minimal_covering_pairs(&pairs), pairs);
    }

    #[test]
    fn find_pairs_example1_contains_equivalent_of_printed_pair() {
        let an = example1();
        let alpha = md(&[5, 5, 5, 5, 0, 0, 0]);
        let beta = md(&[3, 3, 2, 2, 6, 5, 6]);
        let lattice = lcm_lattice(an.ideal()).unwrap();
        assert!(lattice.contains(&alpha));
        assert!(!lattice.contains(&beta));
        // the lcm of the generators below beta gives the same restriction
        let beta_lcm = an.ideal().restrict(&beta).unwrap().lcm();
        assert_eq!(beta_lcm, md(&[3, 2, 2, 2, 6, 5, 6]));
        let pairs = covering_pairs_among(an.ideal(), &[alpha.clone(), beta_lcm.clone(), beta.clone()]);
        assert!(pairs.contains(&(beta, alpha.clone())));
        assert!(pairs.contains(&(beta_lcm, alpha)));
    }

    #[test]
    fn report_serialization() {
        let r = check_top(&example2()).unwrap();
        let line = serde_json::to_string(&r).unwrap();
        let back: InequalityReport = serde_json::from_str(&line).unwrap();
        assert_eq!(back, r);
    }
}

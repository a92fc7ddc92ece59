//! Bundled example ideals and the table of published values they must
//! reproduce.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::betti::multigraded_betti;
use crate::checks::{
    check_consecutive, check_covering, check_multiple, check_subadditivity_profile, check_top,
    find_covering_pairs, Analysis,
};
use crate::complex::{is_minimal, restrict_complex, shifts_of_complex, taylor_complex};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::ideal::MonomialIdeal;
use crate::minimalize::minimalize;
use crate::monomial::{parse_monomial, Multidegree};
use crate::symbolic::{derive_all_symbolic_bounds, derive_symbolic_bounds, normalize_inequality};

pub const EXAMPLE1: &str = include_str!("../fixtures/example1.ideal");
pub const EXAMPLE2: &str = include_str!("../fixtures/example2.ideal");
pub const KOSZUL2: &str = include_str!("../fixtures/koszul2.ideal");
pub const GENERAL7: &str = include_str!("../fixtures/general7.ideal");

/// Twelve generators in `x y z u v w a`, projective dimension 7.
pub fn example1() -> MonomialIdeal {
    MonomialIdeal::parse(EXAMPLE1).expect("bundled fixture parses")
}

/// Five generators in `x y z w u v a`, Betti numbers 1, 5, 8, 5, 1.
pub fn example2() -> MonomialIdeal {
    MonomialIdeal::parse(EXAMPLE2).expect("bundled fixture parses")
}

pub fn koszul2() -> MonomialIdeal {
    MonomialIdeal::parse(KOSZUL2).expect("bundled fixture parses")
}

/// Zero-dimensional, `n = 7`, `m = 8`.
pub fn general7() -> MonomialIdeal {
    MonomialIdeal::parse(GENERAL7).expect("bundled fixture parses")
}

pub const EXAMPLE1_ALPHA: [u32; 7] = [5, 5, 5, 5, 0, 0, 0];
pub const EXAMPLE1_BETA: [u32; 7] = [3, 3, 2, 2, 6, 5, 6];
pub const EXAMPLE2_ALPHA: [u32; 7] = [3, 2, 2, 2, 2, 0, 2];
pub const EXAMPLE2_BETA: [u32; 7] = [2, 2, 3, 2, 2, 2, 0];

/// Restricted ideals of example1 as printed alongside the example.
pub const EXAMPLE1_PRINTED_ALPHA_GENS: [&str; 6] = ["x^5", "y^5", "z^5", "u^5", "x^3*y^3*z^2", "u^2*y^2*z^3"];
pub const EXAMPLE1_PRINTED_BETA_GENS: [&str; 6] =
    ["w^5", "v^6", "a^6", "x^2*w^2*v^2", "a^2*x^3*y^2*u^2*w^2", "a^2*z^2*u^2"];

/// Fixture texts used by [`verify`].
#[derive(Clone, Debug)]
pub struct Fixtures {
    pub example1: String,
    pub example2: String,
}

impl Default for Fixtures {
    fn default() -> Self {
        Fixtures {
            example1: EXAMPLE1.to_string(),
            example2: EXAMPLE2.to_string(),
        }
    }
}

impl Fixtures {
    /// Reads `example1.ideal` and `example2.ideal` from `dir`.
    pub fn from_dir(dir: &Path) -> std::io::Result<Self> {
        Ok(Fixtures {
            example1: std::fs::read_to_string(dir.join("example1.ideal"))?,
            example2: std::fs::read_to_string(dir.join("example2.ideal"))?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "note", rename_all = "lowercase")]
pub enum GoldenStatus {
    Pass,
    /// Differs from the published value in a documented way.
    Explained(String),
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenCheck {
    pub id: String,
    pub expected: String,
    pub computed: String,
    #[serde(flatten)]
    pub status: GoldenStatus,
}

impl GoldenCheck {
    pub fn ok(&self) -> bool {
        self.status != GoldenStatus::Fail
    }
}

impl fmt::Display for GoldenCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match &self.status {
            GoldenStatus::Pass => "PASS",
            GoldenStatus::Explained(_) => "NOTE",
            GoldenStatus::Fail => "FAIL",
        };
        write!(f, "[{tag}] {:<26} expected {:<32} computed {}", self.id, self.expected, self.computed)?;
        if let GoldenStatus::Explained(note) = &self.status {
            write!(f, "\n       {note}")?;
        }
        Ok(())
    }
}

struct Sheet(Vec<GoldenCheck>);

impl Sheet {
    fn compare(&mut self, id: &str, expected: impl fmt::Display, computed: impl fmt::Display) {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        let status = if expected == computed { GoldenStatus::Pass } else { GoldenStatus::Fail };
        self.0.push(GoldenCheck { id: id.into(), expected, computed, status });
    }

    fn push(&mut self, id: &str, expected: impl fmt::Display, computed: impl fmt::Display, status: GoldenStatus) {
        self.0.push(GoldenCheck {
            id: id.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            status,
        });
    }

    fn error(&mut self, id: &str, err: &Error) {
        self.push(id, "computation", format!("error: {err}"), GoldenStatus::Fail);
    }
}

fn joined<T: fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn md(v: &[u32]) -> Multidegree {
    Multidegree::new(v.to_vec())
}

/// Runs every published numeric claim against the fixtures.
pub fn verify(fixtures: &Fixtures) -> Vec<GoldenCheck> {
    let mut sheet = Sheet(Vec::new());
    match MonomialIdeal::parse(&fixtures.example2) {
        Ok(i) => {
            if let Err(e) = example2_block(&mut sheet, i) {
                sheet.error("example2", &e);
            }
        }
        Err(e) => sheet.error("example2.parse", &e),
    }
    match MonomialIdeal::parse(&fixtures.example1) {
        Ok(i) => {
            if let Err(e) = example1_block(&mut sheet, i) {
                sheet.error("example1", &e);
            }
        }
        Err(e) => sheet.error("example1.parse", &e),
    }
    if let Err(e) = symbolic_block(&mut sheet) {
        sheet.error("symbolic", &e);
    }
    sheet.0
}

fn example2_block(sheet: &mut Sheet, ideal: MonomialIdeal) -> Result<()> {
    let q = FieldSpec::Rationals;
    let t1_gen = parse_monomial("a^2*x^3*y^2*u^2*w^2", ideal.ring())?;
    sheet.compare("example2.t1_generator", 11, t1_gen.total_degree());

    for field in [q, FieldSpec::PrimeField(32003)] {
        let betti = multigraded_betti(&ideal, field)?;
        sheet.compare(&format!("example2.betti.{field}"), "1 5 8 5 1", joined(&betti.totals()));
    }
    let taylor = taylor_complex(&ideal)?;
    sheet.compare("example2.taylor_ranks", "1 5 10 10 5 1", joined(&taylor.ranks()));
    sheet.compare("example2.taylor_minimal", false, is_minimal(&taylor));
    let minimal = minimalize(&taylor, q)?;
    sheet.compare("example2.minimalized_ranks", "1 5 8 5 1", joined(&minimal.ranks()));
    sheet.compare("example2.minimalized_shifts", "0 11 13 15 16", shifts_of_complex(&minimal));

    let an = Analysis::new(ideal.clone(), q)?;
    sheet.compare("example2.shifts", "0 11 13 15 16", an.shifts());
    sheet.compare("example2.projdim", 4, an.projdim());
    sheet.compare("example2.height", 2, ideal.height()?);

    let (alpha, beta) = (md(&EXAMPLE2_ALPHA), md(&EXAMPLE2_BETA));
    let support = an.betti().support(2);
    sheet.compare(
        "example2.support_a2",
        format!("{alpha} {beta}"),
        format!(
            "{} {}",
            if support.contains(&alpha) { alpha.to_string() } else { "missing".into() },
            if support.contains(&beta) { beta.to_string() } else { "missing".into() }
        ),
    );
    sheet.compare("example2.covering_pair", true, ideal.is_covering_pair(&alpha, &beta)?);
    let pairs = find_covering_pairs(&an, Some(2))?;
    let key = if alpha <= beta { (alpha.clone(), beta.clone()) } else { (beta.clone(), alpha.clone()) };
    sheet.compare("example2.found_pair", true, pairs.contains(&key));

    let profile = check_subadditivity_profile(an.shifts());
    sheet.compare("example2.subadditive", true, profile.iter().all(|r| r.holds));
    let consecutive: Vec<String> = check_consecutive(&an)
        .iter()
        .skip(1)
        .map(|r| format!("{}<={}", r.lhs, r.rhs))
        .collect();
    sheet.compare("example2.consecutive", "13<=22 15<=24 16<=26", consecutive.join(" "));
    let top = check_top(&an)?;
    sheet.compare("example2.top", "16<=26", format!("{}<={}", top.lhs, top.rhs));
    let multiple = check_multiple(&an, &[(2, alpha), (2, beta)])?;
    sheet.compare(
        "example2.multiple",
        "16<=26 holds",
        format!("{}<={} {}", multiple.lhs, multiple.rhs, if multiple.holds { "holds" } else { "fails" }),
    );
    Ok(())
}

fn example1_block(sheet: &mut Sheet, ideal: MonomialIdeal) -> Result<()> {
    let q = FieldSpec::Rationals;
    let ring = ideal.ring().clone();
    let parsed = parse_monomial("x^2*w^2*v^2", &ring)?;
    sheet.compare("example1.parse_generator", "(2,0,0,0,2,2,0)", parsed);
    sheet.compare("example1.pure_powers", true, ideal.contains_all_pure_powers());

    let an = Analysis::new(ideal.clone(), q)?;
    sheet.compare("example1.projdim", 7, an.projdim());
    let (alpha, beta) = (md(&EXAMPLE1_ALPHA), md(&EXAMPLE1_BETA));
    sheet.compare("example1.covering_pair", true, ideal.is_covering_pair(&alpha, &beta)?);

    let sorted_gens = |i: &MonomialIdeal| {
        let mut g = i.format_generators();
        g.sort();
        g
    };
    let printed = |gens: &[&str]| -> Result<MonomialIdeal> {
        let gens: Vec<Multidegree> = gens.iter().map(|g| parse_monomial(g, &ring)).collect::<Result<_>>()?;
        MonomialIdeal::new(ring.clone(), gens)
    };

    let restricted_alpha = ideal.restrict(&alpha)?;
    let printed_alpha = printed(&EXAMPLE1_PRINTED_ALPHA_GENS)?;
    let mut corrected = EXAMPLE1_PRINTED_ALPHA_GENS.to_vec();
    corrected[4] = "x^3*y^2*z^2";
    let status = if restricted_alpha.generator_set() == printed_alpha.generator_set() {
        GoldenStatus::Pass
    } else if restricted_alpha.generator_set() == printed(&corrected)?.generator_set() {
        GoldenStatus::Explained(
            "printed x^3*y^3*z^2 is not a generator of I; the generator x^3*y^2*z^2 lies below alpha".into(),
        )
    } else {
        GoldenStatus::Fail
    };
    sheet.push(
        "example1.restrict_alpha",
        sorted_gens(&printed_alpha).join(","),
        sorted_gens(&restricted_alpha).join(","),
        status,
    );
    sheet.compare("example1.p", 4, an.restricted_projdim(&alpha)?);

    let restricted_beta = ideal.restrict(&beta)?;
    let printed_beta = printed(&EXAMPLE1_PRINTED_BETA_GENS)?;
    let mut extended: Vec<&str> = EXAMPLE1_PRINTED_BETA_GENS.to_vec();
    extended.push("x^3*y^2*z^2");
    let status = if restricted_beta.generator_set() == printed_beta.generator_set() {
        GoldenStatus::Pass
    } else if restricted_beta.generator_set() == printed(&extended)?.generator_set() {
        GoldenStatus::Explained(
            "x^3*y^2*z^2 also lies below beta and is missing from the printed list; covering holds either way".into(),
        )
    } else {
        GoldenStatus::Fail
    };
    sheet.push(
        "example1.restrict_beta",
        sorted_gens(&printed_beta).join(","),
        sorted_gens(&restricted_beta).join(","),
        status,
    );
    let q_def = an.restricted_projdim(&beta)?;
    let q_printed = multigraded_betti(&printed_beta, q)?.projdim();
    let status = if q_def == 5 {
        GoldenStatus::Pass
    } else if q_printed == 5 {
        GoldenStatus::Explained(format!(
            "q = {q_def} from the definition of the restriction, {q_printed} from the printed list"
        ))
    } else {
        GoldenStatus::Fail
    };
    sheet.push("example1.q", 5, q_def, status);
    sheet.compare("example1.q_printed_list", 5, q_printed);

    let minimal = minimalize(&taylor_complex(&ideal)?, q)?;
    let restricted = restrict_complex(&minimal, &alpha)?;
    sheet.compare(
        "example1.restricted_resolution",
        "minimal projdim 4",
        format!(
            "{} projdim {}",
            if is_minimal(&restricted) { "minimal" } else { "not minimal" },
            restricted.length()
        ),
    );

    let reports = check_covering(&an, &alpha, &beta)?;
    let t = an.shifts();
    let t_at = |a: usize| t.t(a).unwrap_or(0);
    let bound = (t_at(2) + t_at(5)).max(t_at(3) + t_at(4));
    let a7 = reports
        .iter()
        .find(|r| r.params.get("a").and_then(|v| v.as_u64()) == Some(7))
        .ok_or_else(|| Error::Inconsistent("no report at a = 7".into()))?;
    sheet.compare(
        "example1.t7_bound",
        format!("{}<={} holds", t_at(7), bound),
        format!("{}<={} {}", a7.lhs, a7.rhs, if a7.holds { "holds" } else { "fails" }),
    );
    Ok(())
}

fn symbolic_block(sheet: &mut Sheet) -> Result<()> {
    let t6 = normalize_inequality("t_6 ≤ t_1+t_2+t_3")?;
    let found = derive_symbolic_bounds(7, 8, 6)?.iter().any(|b| b.render() == t6);
    sheet.compare("symbolic.t6_n7_m8", &t6, if found { t6.clone() } else { "absent".into() });

    let t7 = normalize_inequality("t_7 ≤ t_1+t_2+t_4")?;
    let mut missing = Vec::new();
    let mut beyond = Vec::new();
    for n in 6..=20usize {
        for m in 6..=2 * n - 6 {
            let derived = derive_all_symbolic_bounds(n, m, 7)?.iter().any(|b| b.render() == t7);
            match (derived, m <= 10) {
                (true, _) => {}
                (false, true) => missing.push(format!("n={n},m={m}")),
                (false, false) => beyond.push((n, m)),
            }
        }
    }
    sheet.compare(
        "symbolic.t7_m_le_10",
        "derived for 6<=n<=20, 6<=m<=min(2n-6,10)",
        if missing.is_empty() {
            "derived for 6<=n<=20, 6<=m<=min(2n-6,10)".to_string()
        } else {
            format!("missing at {}", missing.join(" "))
        },
    );
    let literal = (8..=20).all(|n| {
        derive_symbolic_bounds(n, 10, 7)
            .map(|b| b.iter().any(|b| b.render() == t7))
            .unwrap_or(false)
    });
    sheet.compare("symbolic.t7_minimal_m10", true, literal);
    if !beyond.is_empty() {
        sheet.push(
            "symbolic.t7_m_ge_11",
            "derived for m <= 2n-6",
            format!("not derived for {} pairs with m >= 11", beyond.len()),
            GoldenStatus::Explained(
                "for m >= 11 no window applies at index 7 (needs 2a >= m+4) nor below it, so only t_7 <= t_1+t_6 follows".into(),
            ),
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_load() {
        assert_eq!(example1().num_generators(), 12);
        assert_eq!(example2().num_generators(), 5);
        assert_eq!(koszul2().num_generators(), 2);
        assert_eq!(general7().num_generators(), 8);
    }

    #[test]
    fn all_golden_values_reproduce() {
        let checks = verify(&Fixtures::default());
        for c in &checks {
            assert!(c.ok(), "{c}");
        }
        let explained: Vec<&str> = checks
            .iter()
            .filter(|c| matches!(c.status, GoldenStatus::Explained(_)))
            .map(|c| c.id.as_str())
            .collect();
        assert_eq!(explained, vec!["example1.restrict_alpha", "example1.restrict_beta", "symbolic.t7_m_ge_11"]);
    }

    #[test]
    fn corrupted_fixture_fails() {
        let mut f = Fixtures::default();
        f.example2 = f.example2.replace("x^3*y^2*z^2", "x^3*y^2*z^3");
        let checks = verify(&f);
        assert!(checks.iter().any(|c| c.status == GoldenStatus::Fail));
        let garbage = Fixtures {
            example1: "vars: x\nq^2\n".into(),
            example2: EXAMPLE2.into(),
        };
        let checks = verify(&garbage);
        assert!(checks.iter().any(|c| c.id == "example1.parse" && !c.ok()));
    }

    #[test]
    fn check_serialization() {
        let c = GoldenCheck {
            id: "x".into(),
            expected: "1".into(),
            computed: "1".into(),
            status: GoldenStatus::Explained("why".into()),
        };
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"id":"x","expected":"1","computed":"1","status":"explained","note":"why"}"#);
        assert_eq!(serde_json::from_str::<GoldenCheck>(&s).unwrap(), c);
    }
}

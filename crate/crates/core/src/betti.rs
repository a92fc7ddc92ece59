//! Multigraded Betti numbers of `S/I` via strand homology of the Taylor
//! complex.
//!
//! For a multidegree `alpha` the degree-`alpha` part of `T ⊗ K` has basis the
//! faces `F` with `lcm(F) = alpha`, and its differential keeps the Taylor
//! term `F \ f` exactly when `lcm(F \ f) = alpha` (the monomial coefficient is
//! then 1; all other terms vanish mod the maximal ideal). Then
//! `beta_{a,alpha}(S/I) = dim H_a` of that strand, with faces of size `a` in
//! homological degree `a`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{FreeComplex, ShiftProfile};
use crate::error::Result;
use crate::faces::{check_cap, FaceLcms, DEFAULT_GENERATOR_CAP};
use crate::field::FieldSpec;
use crate::ideal::MonomialIdeal;
use crate::linalg::rank_integer;
use crate::monomial::Multidegree;

/// Nonzero multigraded Betti numbers `beta_{a,alpha}` of `S/I`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BettiTable {
    entries: BTreeMap<(usize, Multidegree), usize>,
}

/// One JSON record of a Betti table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiRecord {
    pub a: usize,
    pub mdeg: Multidegree,
    pub rank: usize,
}

impl BettiTable {
    pub fn from_entries(entries: impl IntoIterator<Item = ((usize, Multidegree), usize)>) -> Self {
        BettiTable {
            entries: entries.into_iter().filter(|(_, r)| *r > 0).collect(),
        }
    }

    pub fn get(&self, a: usize, alpha: &Multidegree) -> usize {
        self.entries.get(&(a, alpha.clone())).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, Multidegree), usize> {
        &self.entries
    }

    /// Largest homological index with a nonzero entry.
    pub fn projdim(&self) -> usize {
        self.entries.keys().map(|(a, _)| *a).max().unwrap_or(0)
    }

    /// Total Betti number in each homological degree `0..=projdim`.
    pub fn totals(&self) -> Vec<usize> {
        let mut out = vec![0; self.projdim() + 1];
        for ((a, _), r) in &self.entries {
            out[*a] += r;
        }
        out
    }

    /// Coarse table `(a, total degree) -> sum of ranks`.
    pub fn coarse(&self) -> BTreeMap<(usize, u32), usize> {
        let mut out = BTreeMap::new();
        for ((a, alpha), r) in &self.entries {
            *out.entry((*a, alpha.total_degree())).or_insert(0) += r;
        }
        out
    }

    /// Multidegrees with `beta_{a,alpha} != 0`.
    pub fn support(&self, a: usize) -> Vec<Multidegree> {
        self.entries
            .keys()
            .filter(|(b, _)| *b == a)
            .map(|(_, alpha)| alpha.clone())
            .collect()
    }

    /// `t_a = max { |alpha| : beta_{a,alpha} != 0 }`.
    pub fn shift_profile(&self) -> ShiftProfile {
        let mut shifts = vec![0u32; self.projdim() + 1];
        for (a, alpha) in self.entries.keys() {
            shifts[*a] = shifts[*a].max(alpha.total_degree());
        }
        ShiftProfile::new(shifts)
    }

    /// A multidegree attaining `t_a`.
    pub fn shift_witness(&self, a: usize) -> Option<Multidegree> {
        self.entries
            .keys()
            .filter(|(b, _)| *b == a)
            .max_by_key(|(_, alpha)| alpha.total_degree())
            .map(|(_, alpha)| alpha.clone())
    }

    pub fn records(&self) -> Vec<BettiRecord> {
        self.entries
            .iter()
            .map(|((a, mdeg), rank)| BettiRecord {
                a: *a,
                mdeg: mdeg.clone(),
                rank: *rank,
            })
            .collect()
    }

    pub fn from_records(records: &[BettiRecord]) -> Self {
        BettiTable::from_entries(records.iter().map(|r| ((r.a, r.mdeg.clone()), r.rank)))
    }

    /// Macaulay2-style grid: column `a`, row `d - a`, `.` for zero.
    pub fn render_grid(&self) -> String {
        let coarse = self.coarse();
        let p = self.projdim();
        let rows: BTreeSet<i64> = coarse.keys().map(|(a, d)| *d as i64 - *a as i64).collect();
        let totals = self.totals();
        let width = coarse
            .values()
            .chain(totals.iter())
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        let label_width = rows
            .iter()
            .map(|r| r.to_string().len() + 1)
            .max()
            .unwrap_or(2)
            .max("total:".len());
        let mut s = String::new();
        let _ = write!(s, "{:>label_width$}", "");
        for a in 0..=p {
            let _ = write!(s, " {a:>width$}");
        }
        s.push('\n');
        let _ = write!(s, "{:>label_width$}", "total:");
        for t in &totals {
            let _ = write!(s, " {t:>width$}");
        }
        s.push('\n');
        for r in rows {
            let _ = write!(s, "{:>label_width$}", format!("{r}:"));
            for a in 0..=p {
                let d = r + a as i64;
                let v = if d < 0 { 0 } else { coarse.get(&(a, d as u32)).copied().unwrap_or(0) };
                if v == 0 {
                    let _ = write!(s, " {:>width$}", ".");
                } else {
                    let _ = write!(s, " {v:>width$}");
                }
            }
            s.push('\n');
        }
        s
    }
}

/// `{ lcm(F) : F nonempty subset of G(I) }` in lexicographic order.
pub fn lcm_lattice(ideal: &MonomialIdeal) -> Result<BTreeSet<Multidegree>> {
    check_cap(ideal.num_generators(), DEFAULT_GENERATOR_CAP)?;
    let lcms = FaceLcms::new(ideal.generators(), ideal.nvars());
    Ok((1..lcms.len()).map(|mask| lcms.mdeg(mask)).collect())
}

/// Face counts and Betti numbers of one strand, indexed by homological degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrandHomology {
    pub dims: Vec<usize>,
    pub betti: Vec<usize>,
}

impl StrandHomology {
    pub fn euler_characteristic_of_chains(&self) -> i64 {
        alternating_sum(&self.dims)
    }

    pub fn euler_characteristic_of_homology(&self) -> i64 {
        alternating_sum(&self.betti)
    }
}

fn alternating_sum(v: &[usize]) -> i64 {
    v.iter()
        .enumerate()
        .map(|(a, &x)| if a % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

/// Faces of each strand, keyed by the strand's lcm.
fn strands(lcms: &FaceLcms) -> BTreeMap<Multidegree, Vec<usize>> {
    let mut by_lcm: HashMap<&[u32], Vec<usize>> = HashMap::new();
    for mask in 1..lcms.len() {
        by_lcm.entry(lcms.get(mask)).or_default().push(mask);
    }
    by_lcm
        .into_iter()
        .map(|(k, v)| (Multidegree::new(k.to_vec()), v))
        .collect()
}

fn strand_homology(faces: &[usize], field: FieldSpec) -> StrandHomology {
    let top = faces.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0);
    let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
    let mut pos: HashMap<usize, usize> = HashMap::with_capacity(faces.len());
    for &f in faces {
        let k = f.count_ones() as usize;
        pos.insert(f, by_size[k].len());
        by_size[k].push(f);
    }
    // ranks[k] = rank of the strand differential from size k to size k - 1
    let mut ranks = vec![0usize; top + 2];
    for k in 1..=top {
        if by_size[k].is_empty() || by_size[k - 1].is_empty() {
            continue;
        }
        let mut m = vec![vec![0i64; by_size[k].len()]; by_size[k - 1].len()];
        for (c, &face) in by_size[k].iter().enumerate() {
            let mut bits = face;
            let mut idx = 0;
            while bits != 0 {
                let low = bits & bits.wrapping_neg();
                if let Some(&r) = pos.get(&(face & !low)) {
                    if (face & !low).count_ones() as usize == k - 1 {
                        m[r][c] = if idx % 2 == 0 { 1 } else { -1 };
                    }
                }
                bits &= bits - 1;
                idx += 1;
            }
        }
        ranks[k] = rank_integer(&m, field);
    }
    let dims: Vec<usize> = by_size.iter().map(Vec::len).collect();
    let betti = (0..=top)
        .map(|k| dims[k] - ranks[k] - ranks[k + 1])
        .collect();
    StrandHomology { dims, betti }
}

/// Strand homology for a single multidegree (empty unless `alpha` is in the
/// lcm lattice).
pub fn strand(ideal: &MonomialIdeal, alpha: &Multidegree, field: FieldSpec) -> Result<StrandHomology> {
    check_cap(ideal.num_generators(), DEFAULT_GENERATOR_CAP)?;
    let lcms = FaceLcms::new(ideal.generators(), ideal.nvars());
    let faces: Vec<usize> = (1..lcms.len())
        .filter(|&mask| lcms.get(mask) == alpha.exponents())
        .collect();
    Ok(strand_homology(&faces, field))
}

/// Multigraded Betti table of `S/I` over `field`.
pub fn multigraded_betti(ideal: &MonomialIdeal, field: FieldSpec) -> Result<BettiTable> {
    multigraded_betti_with_cap(ideal, field, DEFAULT_GENERATOR_CAP)
}

/// [`multigraded_betti`] refusing ideals with more than `cap` generators.
pub fn multigraded_betti_with_cap(ideal: &MonomialIdeal, field: FieldSpec, cap: usize) -> Result<BettiTable> {
    check_cap(ideal.num_generators(), cap)?;
    let lcms = FaceLcms::new(ideal.generators(), ideal.nvars());
    let strands: Vec<(Multidegree, Vec<usize>)> = strands(&lcms).into_iter().collect();
    let per_strand: Vec<Vec<((usize, Multidegree), usize)>> = strands
        .par_iter()
        .map(|(alpha, faces)| {
            let h = strand_homology(faces, field);
            h.betti
                .iter()
                .enumerate()
                .filter(|(_, &b)| b > 0)
                .map(|(a, &b)| ((a, alpha.clone()), b))
                .collect()
        })
        .collect();
    let mut entries: BTreeMap<(usize, Multidegree), usize> = BTreeMap::new();
    entries.insert((0, Multidegree::zero(ideal.nvars())), 1);
    entries.extend(per_strand.into_iter().flatten());
    Ok(BettiTable { entries })
}

/// Basis multidegrees of a complex counted per homological degree. For a
/// minimal resolution these are the Betti numbers.
pub fn graded_ranks(complex: &FreeComplex) -> BettiTable {
    let mut entries: BTreeMap<(usize, Multidegree), usize> = BTreeMap::new();
    for (a, module) in complex.modules().iter().enumerate() {
        for b in module {
            *entries.entry((a, b.mdeg.clone())).or_insert(0) += 1;
        }
    }
    BettiTable { entries }
}

/// Maximal shifts `t_0..t_p` of the minimal resolution of `S/I`.
pub fn shifts(ideal: &MonomialIdeal, field: FieldSpec) -> Result<ShiftProfile> {
    Ok(multigraded_betti(ideal, field)?.shift_profile())
}

/// Projective dimension of `S/I`.
pub fn projdim(ideal: &MonomialIdeal, field: FieldSpec) -> Result<usize> {
    Ok(multigraded_betti(ideal, field)?.projdim())
}

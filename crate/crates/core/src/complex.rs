//! Multigraded free chain complexes over `S = K[x_1..x_n]`.
//!
//! A complex is a list of free modules, each given by the multidegrees of its
//! basis, together with differentials `d_a : F_a -> F_{a-1}` stored column by
//! column. Every entry is a scalar times a monomial; for a homogeneous
//! complex the monomial is forced to be `mdeg(col) - mdeg(row)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::faces::{check_cap, mask_indices, subsets_of_size, FaceLcms, DEFAULT_GENERATOR_CAP};
use crate::field::{format_rational, parse_rational, Field, FieldSpec, Rationals, Zp};
use crate::ideal::MonomialIdeal;
use crate::monomial::Multidegree;

/// Identifies a basis element: a face of the Taylor simplex (sorted generator
/// indices, 0-based) or an opaque id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Face(Vec<usize>),
    Id(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub label: Label,
    pub mdeg: Multidegree,
}

impl BasisElement {
    pub fn degree(&self) -> u32 {
        self.mdeg.total_degree()
    }
}

/// One nonzero entry `coeff * x^mdeg` of a differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub row: usize,
    pub coeff: BigRational,
    pub mdeg: Multidegree,
}

/// Column-major sparse matrix; each column is sorted by row.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub cols: Vec<Vec<Entry>>,
}

impl SparseMatrix {
    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }
}

/// Maximal shifts `t_0..t_p` of a complex and its length `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftProfile {
    pub shifts: Vec<u32>,
    pub projdim: usize,
}

impl ShiftProfile {
    pub fn new(shifts: Vec<u32>) -> Self {
        let projdim = shifts.len().saturating_sub(1);
        ShiftProfile { shifts, projdim }
    }

    /// `t_a`, or `None` past the end of the complex.
    pub fn t(&self, a: usize) -> Option<u32> {
        self.shifts.get(a).copied()
    }
}

impl fmt::Display for ShiftProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.shifts.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    field: FieldSpec,
    nvars: usize,
    modules: Vec<Vec<BasisElement>>,
    /// `differentials[a - 1]` maps module `a` to module `a - 1`.
    differentials: Vec<SparseMatrix>,
}

impl FreeComplex {
    /// Assembles a complex; only checks that the shapes line up.
    pub fn from_parts(
        field: FieldSpec,
        nvars: usize,
        modules: Vec<Vec<BasisElement>>,
        differentials: Vec<SparseMatrix>,
    ) -> Result<Self> {
        if modules.is_empty() {
            return Err(Error::Precondition("a complex needs at least one module".into()));
        }
        if differentials.len() + 1 != modules.len() {
            return Err(Error::Precondition(format!(
                "{} modules need {} differentials, got {}",
                modules.len(),
                modules.len() - 1,
                differentials.len()
            )));
        }
        for (a, d) in differentials.iter().enumerate() {
            if d.ncols() != modules[a + 1].len() || d.nrows != modules[a].len() {
                return Err(Error::Precondition(format!(
                    "differential {} has shape {}x{}, expected {}x{}",
                    a + 1,
                    d.nrows,
                    d.ncols(),
                    modules[a].len(),
                    modules[a + 1].len()
                )));
            }
            if d.cols.iter().flatten().any(|e| e.row >= d.nrows) {
                return Err(Error::Precondition(format!("row out of range in differential {}", a + 1)));
            }
        }
        for b in modules.iter().flatten() {
            if b.mdeg.len() != nvars {
                return Err(Error::LengthMismatch {
                    left: b.mdeg.len(),
                    right: nvars,
                });
            }
        }
        Ok(FreeComplex {
            field,
            nvars,
            modules,
            differentials,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Index of the last module.
    pub fn length(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn modules(&self) -> &[Vec<BasisElement>] {
        &self.modules
    }

    pub fn module(&self, a: usize) -> &[BasisElement] {
        self.modules.get(a).map_or(&[], Vec::as_slice)
    }

    /// `d_a : F_a -> F_{a-1}` for `1 <= a <= length`.
    pub fn differential(&self, a: usize) -> &SparseMatrix {
        &self.differentials[a - 1]
    }

    pub fn differential_mut(&mut self, a: usize) -> &mut SparseMatrix {
        &mut self.differentials[a - 1]
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(Vec::len).collect()
    }

    /// Same complex with coefficients reduced into `field`.
    pub fn over(&self, field: FieldSpec) -> Result<FreeComplex> {
        let mut out = self.clone();
        out.field = field;
        for d in &mut out.differentials {
            for col in &mut d.cols {
                for e in col.iter_mut() {
                    e.coeff = field.canonical(&e.coeff)?;
                }
                col.retain(|e| !e.coeff.is_zero());
            }
        }
        Ok(out)
    }

    /// Drops trailing zero modules.
    pub(crate) fn trim(mut self) -> Self {
        while self.modules.len() > 1 && self.modules.last().is_some_and(Vec::is_empty) {
            self.modules.pop();
            self.differentials.pop();
        }
        self
    }
}

/// The Taylor resolution of `S/I`.
pub fn taylor_complex(ideal: &MonomialIdeal) -> Result<FreeComplex> {
    taylor_complex_with_cap(ideal, DEFAULT_GENERATOR_CAP)
}

pub fn taylor_complex_with_cap(ideal: &MonomialIdeal, cap: usize) -> Result<FreeComplex> {
    taylor_complex_from_generators(ideal.generators(), ideal.nvars(), cap)
}

/// Taylor complex on an arbitrary (not necessarily minimal) generator list.
pub fn taylor_complex_from_generators(
    gens: &[Multidegree],
    nvars: usize,
    cap: usize,
) -> Result<FreeComplex> {
    check_cap(gens.len(), cap)?;
    let lcms = FaceLcms::new(gens, nvars);
    Ok(face_complex(gens.len(), nvars, &lcms, |_| true))
}

/// The Scarf complex: Taylor faces whose lcm is shared by no other subset.
pub fn scarf_complex(ideal: &MonomialIdeal) -> Result<FreeComplex> {
    let m = ideal.num_generators();
    check_cap(m, DEFAULT_GENERATOR_CAP)?;
    let n = ideal.nvars();
    let lcms = FaceLcms::new(ideal.generators(), n);
    let mut counts: HashMap<&[u32], u32> = HashMap::new();
    for mask in 0..lcms.len() {
        *counts.entry(lcms.get(mask)).or_default() += 1;
    }
    let unique: Vec<bool> = (0..lcms.len())
        .map(|mask| counts[lcms.get(mask)] == 1)
        .collect();
    Ok(face_complex(m, n, &lcms, |mask| unique[mask]).trim())
}

/// Subcomplex of the Taylor complex on the faces accepted by `keep`, which
/// must be closed under taking subsets.
fn face_complex(m: usize, n: usize, lcms: &FaceLcms, keep: impl Fn(usize) -> bool) -> FreeComplex {
    let mut position = vec![usize::MAX; 1usize << m];
    let mut modules: Vec<Vec<BasisElement>> = Vec::with_capacity(m + 1);
    let mut masks_by_size: Vec<Vec<usize>> = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let masks: Vec<usize> = subsets_of_size(m, k).into_iter().filter(|&s| keep(s)).collect();
        let module = masks
            .iter()
            .enumerate()
            .map(|(i, &mask)| {
                position[mask] = i;
                BasisElement {
                    label: Label::Face(mask_indices(mask)),
                    mdeg: lcms.mdeg(mask),
                }
            })
            .collect();
        modules.push(module);
        masks_by_size.push(masks);
    }
    let mut differentials = Vec::with_capacity(m);
    for k in 1..=m {
        let cols = masks_by_size[k]
            .iter()
            .map(|&mask| {
                let top = lcms.get(mask);
                let mut col: Vec<Entry> = mask_indices(mask)
                    .into_iter()
                    .enumerate()
                    .map(|(pos, idx)| {
                        let sub = mask & !(1 << idx);
                        let sub_lcm = lcms.get(sub);
                        let mono: Vec<u32> = top.iter().zip(sub_lcm).map(|(a, b)| a - b).collect();
                        let sign = if pos % 2 == 0 { 1 } else { -1 };
                        Entry {
                            row: position[sub],
                            coeff: BigRational::from_integer(sign.into()),
                            mdeg: Multidegree::new(mono),
                        }
                    })
                    .filter(|e| e.row != usize::MAX)
                    .collect();
                col.sort_by_key(|e| e.row);
                col
            })
            .collect();
        differentials.push(SparseMatrix {
            nrows: modules[k - 1].len(),
            cols,
        });
    }
    FreeComplex {
        field: FieldSpec::Rationals,
        nvars: n,
        modules,
        differentials,
    }
}

/// `F^{<= alpha}`: the subcomplex on basis elements with multidegree `<= alpha`.
pub fn restrict_complex(complex: &FreeComplex, alpha: &Multidegree) -> Result<FreeComplex> {
    if alpha.len() != complex.nvars {
        return Err(Error::LengthMismatch {
            left: alpha.len(),
            right: complex.nvars,
        });
    }
    let mut new_index: Vec<Vec<Option<usize>>> = Vec::with_capacity(complex.modules.len());
    let mut modules = Vec::with_capacity(complex.modules.len());
    for module in &complex.modules {
        let mut idx = Vec::with_capacity(module.len());
        let mut kept = Vec::new();
        for b in module {
            if b.mdeg.divides(alpha) {
                idx.push(Some(kept.len()));
                kept.push(b.clone());
            } else {
                idx.push(None);
            }
        }
        new_index.push(idx);
        modules.push(kept);
    }
    let differentials = complex
        .differentials
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let (rows, cols) = (&new_index[i], &new_index[i + 1]);
            let cols = d
                .cols
                .iter()
                .enumerate()
                .filter(|(c, _)| cols[*c].is_some())
                .map(|(_, col)| {
                    col.iter()
                        .filter_map(|e| {
                            rows[e.row].map(|row| Entry {
                                row,
                                coeff: e.coeff.clone(),
                                mdeg: e.mdeg.clone(),
                            })
                        })
                        .collect()
                })
                .collect();
            SparseMatrix {
                nrows: modules[i].len(),
                cols,
            }
        })
        .collect();
    Ok(FreeComplex {
        field: complex.field,
        nvars: complex.nvars,
        modules,
        differentials,
    }
    .trim())
}

/// First defect found by [`verify_complex`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyFailure {
    /// Entry monomial disagrees with `mdeg(col) - mdeg(row)`.
    NotHomogeneous { degree: usize, row: usize, col: usize },
    /// `d_{a-1} d_a` has a nonzero entry at (`row`, `col`).
    NonzeroComposite { degree: usize, row: usize, col: usize },
    /// A coefficient is not a valid element of the complex's field.
    BadCoefficient { degree: usize, row: usize, col: usize },
}

impl fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyFailure::NotHomogeneous { degree, row, col } => {
                write!(f, "d_{degree} entry ({row},{col}) is not multigraded-homogeneous")
            }
            VerifyFailure::NonzeroComposite { degree, row, col } => {
                write!(f, "d_{} d_{degree} is nonzero at ({row},{col})", degree - 1)
            }
            VerifyFailure::BadCoefficient { degree, row, col } => {
                write!(f, "d_{degree} entry ({row},{col}) has a coefficient outside the field")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub ok: bool,
    pub failure: Option<VerifyFailure>,
}

/// Checks homogeneity of every entry and `d ∘ d = 0`.
pub fn verify_complex(complex: &FreeComplex) -> VerifyReport {
    let failure = match complex.field {
        FieldSpec::Rationals => first_defect(complex, &Rationals),
        FieldSpec::PrimeField(p) => first_defect(complex, &Zp::new(p)),
    };
    VerifyReport {
        ok: failure.is_none(),
        failure,
    }
}

fn first_defect<K: Field>(complex: &FreeComplex, k: &K) -> Option<VerifyFailure> {
    for a in 1..=complex.length() {
        let d = complex.differential(a);
        for (c, col) in d.cols.iter().enumerate() {
            let top = &complex.modules[a][c].mdeg;
            for e in col {
                let bottom = &complex.modules[a - 1][e.row].mdeg;
                if top.checked_sub(bottom).as_ref() != Some(&e.mdeg) {
                    return Some(VerifyFailure::NotHomogeneous { degree: a, row: e.row, col: c });
                }
                if k.from_rational(&e.coeff).is_none() {
                    return Some(VerifyFailure::BadCoefficient { degree: a, row: e.row, col: c });
                }
            }
        }
    }
    for a in 2..=complex.length() {
        let upper = complex.differential(a);
        let lower = complex.differential(a - 1);
        for (c, col) in upper.cols.iter().enumerate() {
            let mut acc: BTreeMap<(usize, Multidegree), K::Elem> = BTreeMap::new();
            for e in col {
                let x = k.from_rational(&e.coeff).expect("checked above");
                for e2 in &lower.cols[e.row] {
                    let y = k.from_rational(&e2.coeff).expect("checked above");
                    let slot = acc.entry((e2.row, e.mdeg.add(&e2.mdeg))).or_insert_with(|| k.zero());
                    *slot = k.add(slot, &k.mul(&x, &y));
                }
            }
            if let Some(((row, _), _)) = acc.iter().find(|(_, v)| !k.is_zero(v)) {
                return Some(VerifyFailure::NonzeroComposite { degree: a, row: *row, col: c });
            }
        }
    }
    None
}

/// True iff no entry is a nonzero scalar (entry monomial equal to 1).
pub fn is_minimal(complex: &FreeComplex) -> bool {
    complex
        .differentials
        .iter()
        .flat_map(|d| d.cols.iter().flatten())
        .all(|e| !e.mdeg.is_zero() || e.coeff.is_zero())
}

/// `t_a` = largest total degree in module `a`; empty inner modules count as 0.
pub fn shifts_of_complex(complex: &FreeComplex) -> ShiftProfile {
    let last = complex
        .modules
        .iter()
        .rposition(|m| !m.is_empty())
        .unwrap_or(0);
    let shifts = complex.modules[..=last]
        .iter()
        .map(|m| m.iter().map(BasisElement::degree).max().unwrap_or(0))
        .collect();
    ShiftProfile::new(shifts)
}

/// Degree bound for the star product of two complexes in homological
/// degree `a`: `max { t_i(F) + t_j(G) : i + j = a }` over existing modules.
pub fn star_shift_bound(left: &ShiftProfile, right: &ShiftProfile, a: usize) -> Option<u32> {
    (0..=a.min(left.projdim))
        .filter(|&i| a - i <= right.projdim)
        .map(|i| left.shifts[i] + right.shifts[a - i])
        .max()
}

/// Same as [`star_shift_bound`] but taking the complexes themselves.
pub fn star_shift_bound_of(left: &FreeComplex, right: &FreeComplex, a: usize) -> Option<u32> {
    star_shift_bound(&shifts_of_complex(left), &shifts_of_complex(right), a)
}

// JSON dump format

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDump {
    pub field: String,
    pub modules: Vec<Vec<BasisDump>>,
    pub differentials: Vec<Vec<EntryDump>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisDump {
    pub label: Label,
    pub mdeg: Multidegree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDump {
    pub col: usize,
    pub row: usize,
    pub coeff: String,
    pub mdeg: Multidegree,
}

impl FreeComplex {
    pub fn to_dump(&self) -> ComplexDump {
        ComplexDump {
            field: match self.field {
                FieldSpec::Rationals => "q".to_string(),
                FieldSpec::PrimeField(p) => format!("p:{p}"),
            },
            modules: self
                .modules
                .iter()
                .map(|m| {
                    m.iter()
                        .map(|b| BasisDump {
                            label: b.label.clone(),
                            mdeg: b.mdeg.clone(),
                        })
                        .collect()
                })
                .collect(),
            differentials: self
                .differentials
                .iter()
                .map(|d| {
                    d.cols
                        .iter()
                        .enumerate()
                        .flat_map(|(c, col)| {
                            col.iter().map(move |e| EntryDump {
                                col: c,
                                row: e.row,
                                coeff: format_rational(&e.coeff),
                                mdeg: e.mdeg.clone(),
                            })
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_dump(dump: &ComplexDump) -> Result<FreeComplex> {
        let field: FieldSpec = dump.field.parse()?;
        let nvars = dump
            .modules
            .iter()
            .flatten()
            .next()
            .map_or(0, |b| b.mdeg.len());
        let modules: Vec<Vec<BasisElement>> = dump
            .modules
            .iter()
            .map(|m| {
                m.iter()
                    .map(|b| BasisElement {
                        label: b.label.clone(),
                        mdeg: b.mdeg.clone(),
                    })
                    .collect()
            })
            .collect();
        let mut differentials = Vec::new();
        for (i, entries) in dump.differentials.iter().enumerate() {
            let ncols = modules.get(i + 1).map_or(0, Vec::len);
            let mut cols: Vec<Vec<Entry>> = vec![Vec::new(); ncols];
            for e in entries {
                let col = cols
                    .get_mut(e.col)
                    .ok_or_else(|| Error::Parse(format!("column {} out of range", e.col)))?;
                col.push(Entry {
                    row: e.row,
                    coeff: parse_rational(&e.coeff)?,
                    mdeg: e.mdeg.clone(),
                });
            }
            for col in &mut cols {
                col.sort_by_key(|e| e.row);
            }
            differentials.push(SparseMatrix {
                nrows: modules[i].len(),
                cols,
            });
        }
        FreeComplex::from_parts(field, nvars, modules, differentials)
    }
}

impl Entry {
    pub fn unit(row: usize, mdeg: Multidegree) -> Entry {
        Entry {
            row,
            coeff: BigRational::one(),
            mdeg,
        }
    }
}

//! Reduction of a free resolution to a minimal one by cancelling unit
//! entries of the differentials.
//!
//! A unit entry `d_a(g, f)` (nonzero scalar, `mdeg f = mdeg g`) splits off
//! the trivial complex `0 -> S f -> S g -> 0`. Removing it replaces the
//! remaining block of `d_a` by its Schur complement
//! `d(r, c) - d(r, f) d(g, c) / d(g, f)`, drops row `f` from `d_{a+1}` and
//! column `g` from `d_{a-1}`. The result is homotopy equivalent to the input.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{BasisElement, Entry, FreeComplex, SparseMatrix};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, Rationals, Zp};
use crate::monomial::Multidegree;

/// Minimal resolution obtained from `complex` by repeated cancellation over
/// `field`. Pivots are taken smallest `(a, row, col)` first.
pub fn minimalize(complex: &FreeComplex, field: FieldSpec) -> Result<FreeComplex> {
    match field {
        FieldSpec::Rationals => Reducer::new(complex, Rationals)?.run(field),
        FieldSpec::PrimeField(p) => Reducer::new(complex, Zp::new(p))?.run(field),
    }
}

struct Differential<E> {
    cols: Vec<BTreeMap<usize, E>>,
    rows: Vec<BTreeSet<usize>>,
    units: BTreeSet<(usize, usize)>,
}

struct Reducer<'a, K: Field> {
    k: K,
    source: &'a FreeComplex,
    alive: Vec<Vec<bool>>,
    /// `diffs[a - 1]` is `d_a`.
    diffs: Vec<Differential<K::Elem>>,
}

impl<'a, K: Field> Reducer<'a, K> {
    fn new(source: &'a FreeComplex, k: K) -> Result<Self> {
        let modules = source.modules();
        let mut diffs = Vec::with_capacity(source.length());
        for a in 1..=source.length() {
            let d = source.differential(a);
            let mut diff = Differential {
                cols: vec![BTreeMap::new(); d.ncols()],
                rows: vec![BTreeSet::new(); d.nrows],
                units: BTreeSet::new(),
            };
            for (c, col) in d.cols.iter().enumerate() {
                let top = &modules[a][c].mdeg;
                for e in col {
                    let bottom = &modules[a - 1][e.row].mdeg;
                    if top.checked_sub(bottom).as_ref() != Some(&e.mdeg) {
                        return Err(Error::Inconsistent(format!(
                            "d_{a} entry ({}, {c}) is not homogeneous",
                            e.row
                        )));
                    }
                    let v = k.from_rational(&e.coeff).ok_or_else(|| {
                        Error::Inconsistent(format!("coefficient {} not in the field", e.coeff))
                    })?;
                    if k.is_zero(&v) {
                        continue;
                    }
                    diff.cols[c].insert(e.row, v);
                    diff.rows[e.row].insert(c);
                    if top == bottom {
                        diff.units.insert((e.row, c));
                    }
                }
            }
            diffs.push(diff);
        }
        Ok(Reducer {
            k,
            source,
            alive: modules.iter().map(|m| vec![true; m.len()]).collect(),
            diffs,
        })
    }

    fn mdeg(&self, a: usize, i: usize) -> &Multidegree {
        &self.source.modules()[a][i].mdeg
    }

    fn set(&mut self, a: usize, row: usize, col: usize, v: K::Elem) {
        let is_unit = self.mdeg(a - 1, row) == self.mdeg(a, col);
        let d = &mut self.diffs[a - 1];
        if self.k.is_zero(&v) {
            d.cols[col].remove(&row);
            d.rows[row].remove(&col);
            d.units.remove(&(row, col));
        } else {
            d.cols[col].insert(row, v);
            d.rows[row].insert(col);
            if is_unit {
                d.units.insert((row, col));
            }
        }
    }

    fn remove(&mut self, a: usize, row: usize, col: usize) {
        let d = &mut self.diffs[a - 1];
        d.cols[col].remove(&row);
        d.rows[row].remove(&col);
        d.units.remove(&(row, col));
    }

    fn next_pivot(&self) -> Option<(usize, usize, usize)> {
        self.diffs
            .iter()
            .enumerate()
            .find_map(|(i, d)| d.units.first().map(|&(r, c)| (i + 1, r, c)))
    }

    fn cancel(&mut self, a: usize, g: usize, f: usize) {
        let k = &self.k;
        let d = &self.diffs[a - 1];
        let pivot_inv = k.inv(&d.cols[f][&g]);
        let row_g: Vec<(usize, K::Elem)> = d.rows[g]
            .iter()
            .filter(|&&c| c != f)
            .map(|&c| (c, k.mul(&d.cols[c][&g], &pivot_inv)))
            .collect();
        let col_f: Vec<(usize, K::Elem)> = d.cols[f]
            .iter()
            .filter(|(&r, _)| r != g)
            .map(|(&r, v)| (r, v.clone()))
            .collect();
        for (c, lambda) in &row_g {
            for (r, v) in &col_f {
                let d = &self.diffs[a - 1];
                let old = d.cols[*c].get(r).cloned().unwrap_or_else(|| self.k.zero());
                let new = self.k.sub(&old, &self.k.mul(v, lambda));
                self.set(a, *r, *c, new);
            }
        }
        let col_entries: Vec<usize> = self.diffs[a - 1].cols[f].keys().copied().collect();
        for r in col_entries {
            self.remove(a, r, f);
        }
        let row_entries: Vec<usize> = self.diffs[a - 1].rows[g].iter().copied().collect();
        for c in row_entries {
            self.remove(a, g, c);
        }
        if a < self.diffs.len() {
            let above: Vec<usize> = self.diffs[a].rows[f].iter().copied().collect();
            for c in above {
                self.remove(a + 1, f, c);
            }
        }
        if a >= 2 {
            let below: Vec<usize> = self.diffs[a - 2].cols[g].keys().copied().collect();
            for r in below {
                self.remove(a - 1, r, g);
            }
        }
        self.alive[a][f] = false;
        self.alive[a - 1][g] = false;
    }

    fn run(mut self, field: FieldSpec) -> Result<FreeComplex> {
        while let Some((a, g, f)) = self.next_pivot() {
            self.cancel(a, g, f);
        }
        let modules = self.source.modules();
        let mut new_index: Vec<Vec<Option<usize>>> = Vec::with_capacity(modules.len());
        let mut out_modules: Vec<Vec<BasisElement>> = Vec::with_capacity(modules.len());
        for (a, module) in modules.iter().enumerate() {
            let mut idx = Vec::with_capacity(module.len());
            let mut kept = Vec::new();
            for (i, b) in module.iter().enumerate() {
                if self.alive[a][i] {
                    idx.push(Some(kept.len()));
                    kept.push(b.clone());
                } else {
                    idx.push(None);
                }
            }
            new_index.push(idx);
            out_modules.push(kept);
        }
        let mut out_diffs = Vec::with_capacity(self.diffs.len());
        for (i, d) in self.diffs.iter().enumerate() {
            let a = i + 1;
            let mut cols = Vec::with_capacity(out_modules[a].len());
            for (c, col) in d.cols.iter().enumerate() {
                if new_index[a][c].is_none() {
                    continue;
                }
                let top = self.mdeg(a, c);
                let mut entries = Vec::with_capacity(col.len());
                for (&r, v) in col {
                    let row = new_index[a - 1][r].ok_or_else(|| {
                        Error::Inconsistent(format!("d_{a} column {c} hits a cancelled row {r}"))
                    })?;
                    let mdeg = top.checked_sub(self.mdeg(a - 1, r)).ok_or_else(|| {
                        Error::Inconsistent(format!("d_{a} entry ({r}, {c}) lost homogeneity"))
                    })?;
                    entries.push(Entry {
                        row,
                        coeff: self.k.to_rational(v),
                        mdeg,
                    });
                }
                entries.sort_by_key(|e| e.row);
                cols.push(entries);
            }
            out_diffs.push(SparseMatrix {
                nrows: out_modules[a - 1].len(),
                cols,
            });
        }
        let complex = FreeComplex::from_parts(field, self.source.nvars(), out_modules, out_diffs)?;
        Ok(complex.trim())
    }
}

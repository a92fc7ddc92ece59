//! Exact matrix rank.
//!
//! Over the rationals, rows are scaled to integers and reduced with Bareiss'
//! fraction-free elimination: every intermediate entry is a minor of the
//! input, so the arithmetic stays exact without ever forming a fraction.
//! Small inputs run in `i128` and switch to big integers on overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::{Field, FieldSpec, Zp};

/// Rank of a dense matrix given as rows of rationals.
pub fn rank_exact(rows: &[Vec<BigRational>], field: FieldSpec) -> usize {
    match field {
        FieldSpec::Rationals => {
            let ints: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_denominators(r)).collect();
            bareiss_rank_big(ints)
        }
        FieldSpec::PrimeField(p) => {
            let k = Zp::new(p);
            let m: Vec<Vec<u64>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|q| k.from_rational(q).unwrap_or(0))
                        .collect()
                })
                .collect();
            modular_rank(m, &k)
        }
    }
}

/// Rank of an integer matrix over the given field.
pub fn rank_integer(rows: &[Vec<i64>], field: FieldSpec) -> usize {
    match field {
        FieldSpec::Rationals => {
            let wide: Vec<Vec<i128>> = rows
                .iter()
                .map(|r| r.iter().map(|&v| v as i128).collect())
                .collect();
            match bareiss_rank_i128(wide) {
                Some(r) => r,
                None => bareiss_rank_big(
                    rows.iter()
                        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                        .collect(),
                ),
            }
        }
        FieldSpec::PrimeField(p) => {
            let k = Zp::new(p);
            let pp = p as i64;
            let m: Vec<Vec<u64>> = rows
                .iter()
                .map(|r| r.iter().map(|&v| v.rem_euclid(pp) as u64).collect())
                .collect();
            modular_rank(m, &k)
        }
    }
}

fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let l = row
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter()
        .map(|q| q.numer() * (&l / q.denom()))
        .collect()
}

/// Bareiss elimination in `i128`; `None` on overflow.
fn bareiss_rank_i128(mut m: Vec<Vec<i128>>) -> Option<usize> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut prev: i128 = 1;
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pv = pivot_row[col];
        for row in rest.iter_mut() {
            let f = row[col];
            for j in col..ncols {
                let v = pv
                    .checked_mul(row[j])?
                    .checked_sub(f.checked_mul(pivot_row[j])?)?;
                row[j] = v / prev;
            }
        }
        prev = pv;
        rank += 1;
    }
    Some(rank)
}

fn bareiss_rank_big(mut m: Vec<Vec<BigInt>>) -> usize {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pv = pivot_row[col].clone();
        for row in rest.iter_mut() {
            let f = row[col].clone();
            if f.is_zero() {
                // entries still need the common scaling by pv / prev
                for v in row[col..].iter_mut() {
                    if !v.is_zero() {
                        *v = &pv * &*v / &prev;
                    }
                }
                continue;
            }
            for j in col..ncols {
                row[j] = (&pv * &row[j] - &f * &pivot_row[j]) / &prev;
            }
        }
        prev = pv;
        rank += 1;
    }
    rank
}

fn modular_rank(mut m: Vec<Vec<u64>>, k: &Zp) -> usize {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = k.inv(&m[rank][col]);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            if row[col] == 0 {
                continue;
            }
            let f = k.mul(&row[col], &inv);
            for j in col..ncols {
                if pivot_row[j] != 0 {
                    row[j] = k.sub(&row[j], &k.mul(&f, &pivot_row[j]));
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
            .collect()
    }

    #[test]
    fn rank_examples() {
        let id = q(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let zero = q(&[&[0, 0], &[0, 0]]);
        let dep = q(&[&[1, 2], &[2, 4]]);
        for f in [FieldSpec::Rationals, FieldSpec::PrimeField(32003)] {
            assert_eq!(rank_exact(&id, f), 3);
            assert_eq!(rank_exact(&zero, f), 0);
            assert_eq!(rank_exact(&dep, f), 1);
            assert_eq!(rank_exact(&[], f), 0);
        }
    }

    #[test]
    fn characteristic_dependence() {
        // det = 2: full rank over Q, rank 2 mod 2
        let m = vec![vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]];
        assert_eq!(rank_integer(&m, FieldSpec::Rationals), 3);
        assert_eq!(rank_integer(&m, FieldSpec::PrimeField(2)), 2);
        assert_eq!(rank_integer(&m, FieldSpec::PrimeField(3)), 3);
    }

    #[test]
    fn fractional_rows() {
        let half = BigRational::new(1.into(), 2.into());
        let m = vec![
            vec![half.clone(), BigRational::one()],
            vec![BigRational::one(), BigRational::from_integer(2.into())],
        ];
        assert_eq!(rank_exact(&m, FieldSpec::Rationals), 1);
    }

    #[test]
    fn big_integer_fallback() {
        let big = i64::MAX / 2;
        let m = vec![vec![big, 1, 3], vec![1, big, 5], vec![7, 11, big]];
        let wide: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
        assert!(bareiss_rank_i128(wide).is_none());
        assert_eq!(rank_integer(&m, FieldSpec::Rationals), 3);
    }

    /// Rank via ordinary rational Gaussian elimination, used as an oracle.
    fn naive_rank(rows: &[Vec<i64>]) -> usize {
        let k = crate::field::Rationals;
        let mut m: Vec<Vec<BigRational>> = q(&rows.iter().map(|r| r.as_slice()).collect::<Vec<_>>());
        let ncols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..ncols {
            let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
            m.swap(rank, p);
            let inv = k.inv(&m[rank][c]);
            for r in 0..m.len() {
                if r != rank && !m[r][c].is_zero() {
                    let f = &m[r][c] * &inv;
                    let pivot = m[rank].clone();
                    for (x, y) in m[r].iter_mut().zip(&pivot) {
                        *x -= &f * y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    proptest! {
        #[test]
        fn bareiss_agrees_with_gaussian(rows in proptest::collection::vec(
            proptest::collection::vec(-3i64..=3, 5), 0..6)) {
            let r = rank_integer(&rows, FieldSpec::Rationals);
            prop_assert_eq!(r, naive_rank(&rows));
            // rank mod p never exceeds rank over Q
            prop_assert!(rank_integer(&rows, FieldSpec::PrimeField(3)) <= r);
        }
    }
}

//! Subsets of a generator list encoded as bitmasks, with their lcms.

use crate::error::{Error, Result};
use crate::monomial::Multidegree;

/// Largest generator count accepted by the face enumerations (2^22 faces).
pub const DEFAULT_GENERATOR_CAP: usize = 22;

pub(crate) fn check_cap(m: usize, cap: usize) -> Result<()> {
    if m > cap || m > 31 {
        return Err(Error::GeneratorCap { count: m, cap });
    }
    Ok(())
}

/// lcm of every subset of the generators, stored flat and indexed by mask.
pub(crate) struct FaceLcms {
    n: usize,
    count: usize,
    data: Vec<u32>,
}

impl FaceLcms {
    pub(crate) fn new(gens: &[Multidegree], n: usize) -> Self {
        let m = gens.len();
        let count = 1usize << m;
        let mut data = vec![0u32; count * n];
        for mask in 1..count {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            let g = gens[low].exponents();
            for v in 0..n {
                data[mask * n + v] = data[rest * n + v].max(g[v]);
            }
        }
        FaceLcms { n, count, data }
    }

    pub(crate) fn get(&self, mask: usize) -> &[u32] {
        &self.data[mask * self.n..(mask + 1) * self.n]
    }

    pub(crate) fn mdeg(&self, mask: usize) -> Multidegree {
        Multidegree::new(self.get(mask).to_vec())
    }

    pub(crate) fn len(&self) -> usize {
        self.count
    }
}

/// Masks of size `k` drawn from `m` elements, in lexicographic order of their
/// sorted index lists.
pub(crate) fn subsets_of_size(m: usize, k: usize) -> Vec<usize> {
    fn rec(start: usize, m: usize, k: usize, acc: usize, out: &mut Vec<usize>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..=m - k {
            rec(i + 1, m, k - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    if k <= m {
        rec(0, m, k, 0, &mut out);
    }
    out
}

pub(crate) fn mask_indices(mask: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut bits = mask;
    while bits != 0 {
        out.push(bits.trailing_zeros() as usize);
        bits &= bits - 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_in_lex_order() {
        let s: Vec<Vec<usize>> = subsets_of_size(4, 2).into_iter().map(mask_indices).collect();
        assert_eq!(
            s,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(subsets_of_size(3, 0), vec![0]);
        assert!(subsets_of_size(2, 3).is_empty());
    }

    #[test]
    fn lcms_by_mask() {
        let gens = vec![Multidegree::new(vec![2, 0]), Multidegree::new(vec![1, 1])];
        let l = FaceLcms::new(&gens, 2);
        assert_eq!(l.get(0), &[0, 0]);
        assert_eq!(l.get(0b11), &[2, 1]);
        assert_eq!(l.len(), 4);
    }
}

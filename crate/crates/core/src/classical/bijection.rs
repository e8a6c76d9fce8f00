// SPDX-License-Identifier: Apache-2.0

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Invertible map on `E × F`, stored on flat indices `x · |F| + y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteBijection {
    sys: usize,
    env: usize,
    forward: Vec<usize>,
    backward: Vec<usize>,
}

impl FiniteBijection {
    /// Fails unless `forward` is a permutation of `0..sys·env`.
    pub fn new(sys: usize, env: usize, forward: Vec<usize>) -> Result<Self> {
        let size = sys * env;
        if size == 0 || forward.len() != size {
            return Err(Error::NotBijective(format!(
                "expected {size} images for a {sys}x{env} product set, got {}",
                forward.len()
            )));
        }
        let mut backward = vec![usize::MAX; size];
        for (a, &b) in forward.iter().enumerate() {
            if b >= size {
                return Err(Error::NotBijective(format!("image {b} of {a} out of range")));
            }
            if backward[b] != usize::MAX {
                return Err(Error::NotBijective(format!("{} and {a} both map to {b}", backward[b])));
            }
            backward[b] = a;
        }
        Ok(Self { sys, env, forward, backward })
    }

    pub fn identity(sys: usize, env: usize) -> Self {
        let forward: Vec<usize> = (0..sys * env).collect();
        Self { sys, env, backward: forward.clone(), forward }
    }

    #[inline]
    pub fn sys_size(&self) -> usize {
        self.sys
    }

    #[inline]
    pub fn env_size(&self) -> usize {
        self.env
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.forward.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    #[inline]
    pub fn forward(&self) -> &[usize] {
        &self.forward
    }

    #[inline]
    pub fn backward(&self) -> &[usize] {
        &self.backward
    }

    #[inline]
    pub fn flat(&self, x: usize, y: usize) -> usize {
        x * self.env + y
    }

    #[inline]
    pub fn split(&self, flat: usize) -> (usize, usize) {
        (flat / self.env, flat % self.env)
    }

    /// `T(x, y)` as a pair.
    pub fn apply(&self, x: usize, y: usize) -> (usize, usize) {
        self.split(self.forward[self.flat(x, y)])
    }

    pub fn apply_inverse(&self, x: usize, y: usize) -> (usize, usize) {
        self.split(self.backward[self.flat(x, y)])
    }

    /// Exact check of `forward ∘ backward = backward ∘ forward = id`.
    pub fn is_consistent(&self) -> bool {
        self.forward.len() == self.sys * self.env
            && self.backward.len() == self.forward.len()
            && (0..self.len())
                .all(|a| self.backward[self.forward[a]] == a && self.forward[self.backward[a]] == a)
    }
}

/// Extends a map `f: E → E` to a bijection `S_f` of `E × E` with
/// `S_f(x, 0) = (f(x), x)`.
///
/// The remaining domain points `(x, z)`, `z ≥ 1`, are matched in lexicographic
/// order to the unused codomain points in lexicographic order.
pub fn complete_to_bijection(f: &[usize]) -> FiniteBijection {
    let n = f.len();
    assert!(n > 0 && f.iter().all(|&v| v < n), "f must be a total map on 0..{n}");
    let size = n * n;
    let mut forward = vec![usize::MAX; size];
    let mut used = vec![false; size];
    for (x, &fx) in f.iter().enumerate() {
        let image = fx * n + x;
        forward[x * n] = image;
        used[image] = true;
    }
    let mut free = (0..size).filter(|&b| !used[b]);
    for x in 0..n {
        for z in 1..n {
            forward[x * n + z] = free.next().expect("free codomain points match free domain points");
        }
    }
    FiniteBijection::new(n, n, forward).expect("completion is a permutation")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_permutations() {
        assert!(FiniteBijection::new(2, 1, vec![0, 0]).is_err());
        assert!(FiniteBijection::new(2, 1, vec![0, 2]).is_err());
        assert!(FiniteBijection::new(2, 2, vec![0, 1, 2]).is_err());
        let t = FiniteBijection::new(2, 2, vec![3, 0, 1, 2]).unwrap();
        assert_eq!(t.backward(), &[1, 2, 3, 0]);
        assert!(t.is_consistent());
    }

    #[test]
    fn completion_of_identity() {
        let s = complete_to_bijection(&[0, 1]);
        assert_eq!(s.apply(0, 0), (0, 0));
        assert_eq!(s.apply(1, 0), (1, 1));
        assert_eq!(s.apply(0, 1), (0, 1));
        assert_eq!(s.apply(1, 1), (1, 0));
    }

    #[test]
    fn completion_of_constant() {
        let s = complete_to_bijection(&[0, 0]);
        assert_eq!(s.apply(0, 0), (0, 0));
        assert_eq!(s.apply(1, 0), (0, 1));
        assert_eq!(s.apply(0, 1), (1, 0));
        assert_eq!(s.apply(1, 1), (1, 1));
    }

    #[test]
    fn completion_is_permutation_for_all_maps_on_three_points() {
        for code in 0..27 {
            let f = [code % 3, (code / 3) % 3, code / 9];
            let s = complete_to_bijection(&f);
            let mut seen = [false; 9];
            for &b in s.forward() {
                assert!(!seen[b]);
                seen[b] = true;
            }
            for (x, &fx) in f.iter().enumerate() {
                assert_eq!(s.apply(x, 0), (fx, x));
            }
        }
    }
}

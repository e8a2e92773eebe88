//! Finite, affine and extended affine symmetric groups in window notation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bijection `f: Z -> Z` with `f(i + d) = f(i) + d`, stored as `[f(1), ..., f(d)]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExtAffinePerm {
    d: usize,
    window: Vec<i64>,
}

impl ExtAffinePerm {
    pub fn identity(d: usize) -> Self {
        ExtAffinePerm {
            d,
            window: (1..=d as i64).collect(),
        }
    }

    pub fn from_window(window: Vec<i64>) -> Result<Self> {
        let d = window.len();
        if d < 2 {
            return Err(Error::InvalidArgument("rank must be at least 2".into()));
        }
        let mut seen = vec![false; d];
        for &x in &window {
            let r = x.rem_euclid(d as i64) as usize;
            if seen[r] {
                return Err(Error::InvalidArgument(format!("window {window:?} repeats a residue")));
            }
            seen[r] = true;
        }
        Ok(ExtAffinePerm { d, window })
    }

    /// Simple reflection `s_i`, `0 <= i < d`.
    pub fn s(d: usize, i: usize) -> Result<Self> {
        if i >= d {
            return Err(Error::IndexOutOfRange {
                index: i as i64,
                what: format!("simple reflections of rank {d}"),
            });
        }
        let mut w = Self::identity(d);
        if i == 0 {
            w.window[0] = 0;
            w.window[d - 1] = d as i64 + 1;
        } else {
            w.window.swap(i - 1, i);
        }
        Ok(w)
    }

    /// The rotation `i -> i + 1`.
    pub fn rho(d: usize) -> Self {
        ExtAffinePerm {
            d,
            window: (2..=d as i64 + 1).collect(),
        }
    }

    pub fn rho_pow(d: usize, m: i64) -> Self {
        ExtAffinePerm {
            d,
            window: (1..=d as i64).map(|i| i + m).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.d
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    /// `f(i)` for any integer `i`.
    pub fn apply(&self, i: i64) -> i64 {
        let d = self.d as i64;
        let r = (i - 1).rem_euclid(d);
        let k = (i - 1).div_euclid(d);
        self.window[r as usize] + k * d
    }

    /// The rotation power `m` with `w = rho^m * (element of the affine group)`.
    pub fn rho_power(&self) -> i64 {
        let d = self.d as i64;
        let s: i64 = self.window.iter().sum();
        (s - d * (d + 1) / 2) / d
    }

    pub fn is_affine(&self) -> bool {
        self.rho_power() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.is_affine() && self.window.iter().all(|&x| 1 <= x && x <= self.d as i64)
    }

    pub fn compose(&self, v: &Self) -> Result<Self> {
        if self.d != v.d {
            return Err(Error::RankMismatch(self.d, v.d));
        }
        Ok(self.compose_unchecked(v))
    }

    pub(crate) fn compose_unchecked(&self, v: &Self) -> Self {
        ExtAffinePerm {
            d: self.d,
            window: v.window.iter().map(|&x| self.apply(x)).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let d = self.d as i64;
        let mut w = vec![0; self.d];
        for i in 1..=d {
            let y = self.window[(i - 1) as usize];
            let r = (y - 1).rem_euclid(d);
            let k = (y - 1).div_euclid(d);
            // f(i) = y  =>  f^{-1}(r + 1) = i - k d
            w[r as usize] = i - k * d;
        }
        ExtAffinePerm { d: self.d, window: w }
    }

    /// Number of affine inversions, `sum_{1<=i<j<=d} |floor((f(j) - f(i)) / d)|`.
    pub fn length(&self) -> usize {
        let d = self.d as i64;
        let mut l = 0;
        for i in 0..self.d {
            for j in i + 1..self.d {
                l += (self.window[j] - self.window[i]).div_euclid(d).unsigned_abs();
            }
        }
        l as usize
    }

    /// Right descent at `i`: `length(w s_i) < length(w)`, i.e. `f(i) > f(i+1)`.
    pub fn has_descent(&self, i: usize) -> bool {
        let i = i as i64;
        self.apply(i) > self.apply(i + 1)
    }

    /// `(m, word)` with `w = rho^m s_{word[0]} ... s_{word[k-1]}` and `k = length(w)`,
    /// peeling the smallest right descent first.
    pub fn reduced_word(&self) -> (i64, Vec<usize>) {
        let mut w = self.clone();
        let mut rev = Vec::new();
        while let Some(i) = (0..self.d).find(|&i| w.has_descent(i)) {
            w = w.compose_unchecked(&Self::s(self.d, i).unwrap());
            rev.push(i);
        }
        rev.reverse();
        (w.rho_power(), rev)
    }

    /// Rebuild `rho^m s_{i_1} ... s_{i_k}`.
    pub fn from_word(d: usize, m: i64, word: &[usize]) -> Result<Self> {
        let mut w = Self::rho_pow(d, m);
        for &i in word {
            w = w.compose_unchecked(&Self::s(d, i)?);
        }
        Ok(w)
    }
}

impl fmt::Display for ExtAffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.window.iter().map(|x| x.to_string()).collect();
        write!(f, "rho^{} * [{}]", self.rho_power(), w.join(","))
    }
}

impl fmt::Debug for ExtAffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashMap, VecDeque};

    fn s(d: usize, i: usize) -> ExtAffinePerm {
        ExtAffinePerm::s(d, i).unwrap()
    }

    /// Minimal word length by breadth-first search over the Coxeter generators.
    fn bfs_lengths(d: usize, max: usize) -> HashMap<ExtAffinePerm, usize> {
        let mut seen = HashMap::new();
        let mut q = VecDeque::new();
        seen.insert(ExtAffinePerm::identity(d), 0);
        q.push_back(ExtAffinePerm::identity(d));
        while let Some(w) = q.pop_front() {
            let l = seen[&w];
            if l == max {
                continue;
            }
            for i in 0..d {
                let v = w.compose(&s(d, i)).unwrap();
                if !seen.contains_key(&v) {
                    seen.insert(v.clone(), l + 1);
                    q.push_back(v);
                }
            }
        }
        seen
    }

    #[test]
    fn length_matches_word_search() {
        let table = bfs_lengths(3, 5);
        for (w, l) in &table {
            assert_eq!(w.length(), *l, "{w}");
        }
        let table = bfs_lengths(4, 4);
        for (w, l) in &table {
            assert_eq!(w.length(), *l, "{w}");
        }
    }

    #[test]
    fn small_examples() {
        assert_eq!(s(3, 0).window(), &[0, 2, 4]);
        assert_eq!(s(3, 0).length(), 1);
        let w = s(3, 1).compose(&s(3, 2)).unwrap().compose(&s(3, 1)).unwrap();
        assert_eq!(w.length(), 3);
        assert_eq!(ExtAffinePerm::identity(3).reduced_word(), (0, vec![]));
        assert_eq!(ExtAffinePerm::rho(3).reduced_word(), (1, vec![]));
        let w = s(3, 2).compose(&s(3, 1)).unwrap();
        assert_eq!(w.reduced_word(), (0, vec![2, 1]));
    }

    #[test]
    fn coxeter_relations() {
        for d in 3..7 {
            let id = ExtAffinePerm::identity(d);
            let rho = ExtAffinePerm::rho(d);
            let rho_inv = rho.inverse();
            for i in 0..d {
                assert_eq!(s(d, i).compose(&s(d, i)).unwrap(), id);
                let conj = rho.compose(&s(d, i)).unwrap().compose(&rho_inv).unwrap();
                assert_eq!(conj, s(d, (i + 1) % d));
                for j in 0..d {
                    let dist = (i as i64 - j as i64).rem_euclid(d as i64);
                    let (a, b) = (s(d, i), s(d, j));
                    let ab = a.compose(&b).unwrap();
                    let ba = b.compose(&a).unwrap();
                    if dist >= 2 && dist <= d as i64 - 2 {
                        assert_eq!(ab, ba);
                    } else if dist == 1 {
                        assert_eq!(ab.compose(&a).unwrap(), ba.compose(&b).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn rho_d_is_central() {
        for d in 3..6 {
            let r = ExtAffinePerm::rho_pow(d, d as i64);
            for i in 0..d {
                let lhs = r.compose(&s(d, i)).unwrap();
                let rhs = s(d, i).compose(&r).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn inverse_is_inverse() {
        let w = ExtAffinePerm::from_word(4, -2, &[0, 1, 3, 2, 0]).unwrap();
        assert_eq!(w.compose(&w.inverse()).unwrap(), ExtAffinePerm::identity(4));
    }
}

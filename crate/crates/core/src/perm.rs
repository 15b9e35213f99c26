//! Permutations of `{0..n}`.
//!
//! Internally every label is 0-based. All text I/O (cycle notation and the
//! one-line `[..]` form) is 1-based. Composition is right-to-left:
//! `a.compose(&b)` is the map `s ↦ a(b(s))`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("label {label} out of range 1..={n}")]
    OutOfRange { label: usize, n: usize },
    #[error("not a bijection: image {0} appears more than once")]
    NotBijective(usize),
    #[error("one-line form has {got} entries, expected {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("malformed permutation `{text}`: {reason}")]
    Syntax { text: String, reason: String },
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(PermError::OutOfRange { label: x + 1, n });
            }
            if seen[x] {
                return Err(PermError::NotBijective(x + 1));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from 1-based images.
    pub fn from_one_based(images: &[usize]) -> Result<Self, PermError> {
        let n = images.len();
        let zero = images
            .iter()
            .map(|&x| {
                if x == 0 || x > n {
                    Err(PermError::OutOfRange { label: x, n })
                } else {
                    Ok(x - 1)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_images(zero)
    }

    /// Builds a permutation of `{0..n}` from 1-based disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<Option<usize>> = vec![None; n];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n {
                    return Err(PermError::OutOfRange { label: x, n });
                }
                let y = cycle[(i + 1) % cycle.len()];
                if images[x - 1].is_some() {
                    return Err(PermError::NotBijective(x));
                }
                images[x - 1] = Some(y - 1);
            }
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(s, im)| im.unwrap_or(s))
            .collect();
        Self::from_images(images)
    }

    /// Parses either cycle notation `(1 2)(3 5)` / `()` or one-line `[2,1,3]`.
    pub fn parse(text: &str, n: usize) -> Result<Self, PermError> {
        let t = text.trim();
        let syntax = |reason: &str| PermError::Syntax {
            text: t.to_string(),
            reason: reason.to_string(),
        };
        if let Some(body) = t.strip_prefix('[') {
            let body = body
                .strip_suffix(']')
                .ok_or_else(|| syntax("missing `]`"))?;
            let entries = body
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| syntax("non-integer entry")))
                .collect::<Result<Vec<_>, _>>()?;
            if entries.len() != n {
                return Err(PermError::WrongLength {
                    got: entries.len(),
                    expected: n,
                });
            }
            return Self::from_one_based(&entries);
        }
        if t.is_empty() {
            return Err(syntax("empty"));
        }
        let mut cycles = Vec::new();
        let mut rest = t;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| syntax("expected `(`"))?;
            let close = open.find(')').ok_or_else(|| syntax("missing `)`"))?;
            let inner = &open[..close];
            if inner.contains('(') {
                return Err(syntax("nested `(`"));
            }
            let cycle = inner
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| syntax("non-integer entry")))
                .collect::<Result<Vec<_>, _>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = open[close + 1..].trim_start();
        }
        Self::from_cycles(n, &cycles)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, s: usize) -> usize {
        self.images[s]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (s, &t) in self.images.iter().enumerate() {
            inv[t] = s;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "degree mismatch");
        Permutation {
            images: other.images.iter().map(|&t| self.images[t]).collect(),
        }
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut out = Self::identity(self.len());
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(s, &t)| s == t)
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(s, &t)| s == t)
            .count()
    }

    /// Disjoint cycles (0-based), each starting at its smallest element,
    /// ordered by that element. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Index of the cycle containing each point, in the order of [`Self::cycles`].
    pub fn cycle_index(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let cycles = self.cycles();
        let mut index = vec![0; self.len()];
        for (i, c) in cycles.iter().enumerate() {
            for &s in c {
                index[s] = i;
            }
        }
        (cycles, index)
    }
}

impl fmt::Display for Permutation {
    /// 1-based cycle notation with fixed points omitted; `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            wrote = true;
            write!(f, "(")?;
            for (i, s) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", s + 1)?;
            }
            write!(f, ")")?;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// True when the group generated by `gens` acts transitively on `{0..n}`.
pub fn is_transitive(n: usize, gens: &[&Permutation]) -> bool {
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(s) = stack.pop() {
        for g in gens {
            let t = g.apply(s);
            if !seen[t] {
                seen[t] = true;
                count += 1;
                stack.push(t);
            }
        }
    }
    count == n
}

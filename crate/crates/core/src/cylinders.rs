//! Cylinder decompositions in rational directions.
//!
//! The horizontal decomposition is built by merging rows (cycles of `h`)
//! across horizontal leaves that carry no marked vertex. Any other rational
//! direction is first rotated to horizontal by a unimodular matrix.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

use crate::origami::Origami;
use crate::sl2::{ext_gcd, Mat2};
use crate::veech::act_matrix;
use crate::Q;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DirectionError {
    #[error("direction (0,0) is undefined")]
    Zero,
    #[error("bad slope `{0}`: expected `p/q`, an integer, or `inf`")]
    Syntax(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CylinderError {
    #[error("no singular horizontal leaf: the surface has no marked vertex")]
    NoSingularLeaf,
}

/// A rational direction with vector `(q, p)`, i.e. slope `p/q`.
///
/// Normalized so that `gcd(|p|,|q|) = 1`, `q ≥ 0`, and `p = 1` when `q = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction {
    p: i64,
    q: i64,
}

impl Direction {
    pub const HORIZONTAL: Direction = Direction { p: 0, q: 1 };
    pub const VERTICAL: Direction = Direction { p: 1, q: 0 };

    pub fn new(p: i64, q: i64) -> Result<Self, DirectionError> {
        if p == 0 && q == 0 {
            return Err(DirectionError::Zero);
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Ok(Direction { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// All normalized directions with `|p|, |q| ≤ bound`.
    pub fn enumerate(bound: i64) -> Vec<Direction> {
        let mut out = Vec::new();
        for q in 0..=bound {
            for p in -bound..=bound {
                if p.gcd(&q) == 1 && (q > 0 || p == 1) {
                    out.push(Direction { p, q });
                }
            }
        }
        out
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 0 {
            write!(f, "inf")
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

impl FromStr for Direction {
    type Err = DirectionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "inf" {
            return Ok(Direction::VERTICAL);
        }
        let syntax = || DirectionError::Syntax(s.to_string());
        match s.split_once('/') {
            Some((p, q)) => {
                let p = p.trim().parse::<i64>().map_err(|_| syntax())?;
                let q = q.trim().parse::<i64>().map_err(|_| syntax())?;
                Direction::new(p, q)
            }
            None => {
                let p = s.parse::<i64>().map_err(|_| syntax())?;
                Direction::new(p, 1)
            }
        }
    }
}

/// Unimodular `U` with `U·(q,p)ᵀ = (1,0)ᵀ`.
pub fn reduce_direction(d: Direction) -> Mat2 {
    let (g, x, y) = ext_gcd(d.q, d.p);
    debug_assert_eq!(g, 1);
    Mat2::new(x, y, -d.p, d.q)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cylinder {
    /// Circumference.
    pub width: u64,
    pub height: u64,
    /// Saddle connections on the bottom boundary circle.
    pub s1: u64,
    /// Saddle connections on the top boundary circle.
    pub s2: u64,
    /// Rows from bottom to top; each row is an `h`-cycle of 0-based squares.
    pub rows: Vec<Vec<usize>>,
    /// Lengths of the saddle connections along the bottom boundary.
    pub bottom_saddle_lengths: Vec<u64>,
}

impl Cylinder {
    /// Circumference over height.
    pub fn modulus(&self) -> Q {
        Q::new(self.width as i64, self.height as i64)
    }

    pub fn area(&self) -> u64 {
        self.width * self.height
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderDecomposition {
    pub direction: Direction,
    pub cylinders: Vec<Cylinder>,
}

impl CylinderDecomposition {
    pub fn m(&self) -> usize {
        self.cylinders.len()
    }

    pub fn moduli(&self) -> Vec<Q> {
        self.cylinders.iter().map(Cylinder::modulus).collect()
    }

    pub fn total_area(&self) -> u64 {
        self.cylinders.iter().map(Cylinder::area).sum()
    }

    pub fn saddle_total(&self) -> u64 {
        self.cylinders.iter().map(|c| c.s1 + c.s2).sum()
    }
}

pub fn horizontal_decomposition(o: &Origami) -> Result<CylinderDecomposition, CylinderError> {
    let h = o.h();
    let v = o.v();
    let marked = o.marked_corners();
    let (rows, row_of) = h.cycle_index();

    // top leaf of a row is singular iff the vertex above-left of some square is marked
    let top_singular: Vec<bool> = rows
        .iter()
        .map(|row| row.iter().any(|&t| marked[v.apply(t)]))
        .collect();
    let bottom_singular: Vec<bool> = rows
        .iter()
        .map(|row| row.iter().any(|&t| marked[t]))
        .collect();
    if !top_singular.iter().any(|&x| x) {
        return Err(CylinderError::NoSingularLeaf);
    }

    let mut used = vec![false; rows.len()];
    let mut cylinders = Vec::new();
    for start in 0..rows.len() {
        if !bottom_singular[start] {
            continue;
        }
        let mut stack = vec![start];
        let mut r = start;
        used[r] = true;
        while !top_singular[r] {
            let above = row_of[v.apply(rows[r][0])];
            debug_assert_eq!(rows[above].len(), rows[r].len());
            debug_assert!(!used[above]);
            used[above] = true;
            stack.push(above);
            r = above;
        }
        let bottom = &rows[start];
        let top = &rows[r];
        let s1 = bottom.iter().filter(|&&t| marked[t]).count() as u64;
        let s2 = top.iter().filter(|&&t| marked[v.apply(t)]).count() as u64;
        let positions: Vec<usize> = (0..bottom.len()).filter(|&i| marked[bottom[i]]).collect();
        let w = bottom.len();
        let bottom_saddle_lengths = positions
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let next = positions[(i + 1) % positions.len()];
                (if next > x { next - x } else { next + w - x }) as u64
            })
            .collect();
        cylinders.push(Cylinder {
            width: w as u64,
            height: stack.len() as u64,
            s1,
            s2,
            rows: stack.iter().map(|&i| rows[i].clone()).collect(),
            bottom_saddle_lengths,
        });
    }
    debug_assert!(used.iter().all(|&u| u), "every row lies in a cylinder");
    Ok(CylinderDecomposition {
        direction: Direction::HORIZONTAL,
        cylinders,
    })
}

pub fn decomposition_in_direction(
    o: &Origami,
    d: Direction,
) -> Result<CylinderDecomposition, CylinderError> {
    let rotated = act_matrix(&reduce_direction(d), o);
    let mut dec = horizontal_decomposition(&rotated)?;
    dec.direction = d;
    Ok(dec)
}

/// `mod(Rᵢ)/mod(Rⱼ)` for all `i < j`.
pub fn moduli_ratio_check(dec: &CylinderDecomposition) -> Vec<Q> {
    let moduli = dec.moduli();
    let mut out = Vec::new();
    for i in 0..moduli.len() {
        for j in i + 1..moduli.len() {
            out.push(moduli[i] / moduli[j]);
        }
    }
    out
}

/// Smallest positive rational that is an integer multiple of every entry.
///
/// Entries must be positive. For reduced fractions,
/// `lcm(a/b, c/d) = lcm(a, c) / gcd(b, d)`.
pub fn rational_lcm(values: &[Q]) -> Option<Q> {
    values
        .iter()
        .copied()
        .reduce(|acc, x| Q::new(acc.numer().lcm(x.numer()), acc.denom().gcd(x.denom())))
}

/// Smallest positive integer that is an integer multiple of every entry.
pub fn integer_lcm(values: &[Q]) -> i64 {
    let one = Q::from_integer(1);
    let l = rational_lcm(values).map_or(one, |l| rational_lcm(&[l, one]).unwrap());
    debug_assert!(l.is_integer());
    l.to_integer()
}

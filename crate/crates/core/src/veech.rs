//! Veech groups of origamis as finite-index subgroups of `PSL(2,ℤ)`.
//!
//! `SL(2,ℤ)` acts on origamis through its generators
//! `T: (h,v) ↦ (h, v∘h⁻¹)` and `S: (h,v) ↦ (v, h⁻¹)`. The combinatorial `S`
//! realizes the matrix `-S`, which is harmless because `-I` acts by
//! `(h,v) ↦ (h⁻¹,v⁻¹)` and that move is folded into the equivalence relation
//! on [`OrigamiClass`]. The Veech group is then the stabilizer of the
//! basepoint class and its index is the orbit size.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::cylinders::{decomposition_in_direction, Direction};
use crate::origami::Origami;
use crate::perm::Permutation;
use crate::sl2::{ext_gcd, Mat2};
use crate::Q;

/// Relative guard band for comparisons between a rational and a multiple of π.
pub const FLOAT_GUARD: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VeechError {
    #[error("orbit exceeds cap of {cap} classes ({explored} found so far)")]
    OrbitCap { cap: usize, explored: usize },
    #[error("matrix {0} does not have determinant 1")]
    NotUnimodular(Mat2),
    #[error("internal: non-integral genus from index {mu}, e2={e2}, e3={e3}, cusps={k0}")]
    NonIntegralGenus {
        mu: usize,
        e2: usize,
        e3: usize,
        k0: usize,
    },
    #[error("internal: no element with |c| < {bound} found (b0={b0})")]
    TerminationBound { bound: f64, b0: u64 },
    #[error("c1 search exceeded {0} candidate matrices")]
    CandidateCap(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    T,
    S,
}

pub fn act_generator(gen: Generator, o: &Origami) -> Origami {
    let (h, v) = (o.h(), o.v());
    let (nh, nv) = match gen {
        Generator::T => (h.clone(), v.compose(&h.inverse())),
        Generator::S => (v.clone(), h.inverse()),
    };
    Origami::from_parts(nh, nv, o.mark_all_vertices())
}

fn act_t_inverse(o: &Origami) -> Origami {
    Origami::from_parts(o.h().clone(), o.v().compose(o.h()), o.mark_all_vertices())
}

/// A letter of a word in `S` and powers of `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    S,
    T(i64),
}

/// Product of letters, read left to right as matrices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn evaluate(&self) -> Mat2 {
        self.0.iter().fold(Mat2::IDENTITY, |acc, l| {
            acc * match *l {
                Letter::S => Mat2::S,
                Letter::T(k) => Mat2::t_pow(k),
            }
        })
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match l {
                Letter::S => write!(f, "S")?,
                Letter::T(k) => write!(f, "T^{k}")?,
            }
        }
        Ok(())
    }
}

/// Writes `M` as `±T^{q₁} S T^{q₂} S ⋯ T^{qᵣ}` by the Euclidean algorithm on
/// the first column.
pub fn word_decompose(m: &Mat2) -> Result<Word, VeechError> {
    if m.det() != 1 {
        return Err(VeechError::NotUnimodular(*m));
    }
    let mut m = *m;
    let mut letters = Vec::new();
    while m.c != 0 {
        let q = m.a.div_euclid(m.c);
        if q != 0 {
            letters.push(Letter::T(q));
        }
        // m ← S⁻¹·T^{-q}·m
        let (a, b) = (m.a - q * m.c, m.b - q * m.d);
        m = Mat2::new(m.c, m.d, -a, -b);
        letters.push(Letter::S);
    }
    // m = ±[[1, x],[0, 1]]
    let k = m.b * m.a;
    if k != 0 {
        letters.push(Letter::T(k));
    }
    Ok(Word(letters))
}

/// `M·o` for any determinant-one `M`.
pub fn act_matrix(m: &Mat2, o: &Origami) -> Origami {
    let word = word_decompose(m).expect("act_matrix needs a unimodular matrix");
    let mut out = o.clone();
    for letter in word.0.iter().rev() {
        match *letter {
            Letter::S => out = act_generator(Generator::S, &out),
            Letter::T(k) if k > 0 => {
                for _ in 0..k {
                    out = act_generator(Generator::T, &out);
                }
            }
            Letter::T(k) => {
                for _ in 0..-k {
                    out = act_t_inverse(&out);
                }
            }
        }
    }
    out
}

/// Canonical representative of an origami up to relabeling and `-I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrigamiClass {
    key: Vec<u32>,
}

fn bfs_relabel(h: &Permutation, v: &Permutation, start: usize, out: &mut Vec<u32>) {
    let n = h.len();
    let mut label = vec![u32::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([start]);
    label[start] = 0;
    while let Some(s) = queue.pop_front() {
        order.push(s);
        for t in [h.apply(s), v.apply(s)] {
            if label[t] == u32::MAX {
                label[t] = (order.len() + queue.len()) as u32;
                queue.push_back(t);
            }
        }
    }
    out.clear();
    out.extend(order.iter().map(|&s| label[h.apply(s)]));
    out.extend(order.iter().map(|&s| label[v.apply(s)]));
}

impl OrigamiClass {
    pub fn of(o: &Origami) -> Self {
        let (h, v) = (o.h(), o.v());
        let (hi, vi) = (h.inverse(), v.inverse());
        let mut best: Option<Vec<u32>> = None;
        let mut buf = Vec::new();
        for (a, b) in [(h, v), (&hi, &vi)] {
            for start in 0..o.n_squares() {
                bfs_relabel(a, b, start, &mut buf);
                if best.as_ref().is_none_or(|cur| buf < *cur) {
                    best = Some(buf.clone());
                }
            }
        }
        OrigamiClass {
            key: best.expect("non-empty origami"),
        }
    }

    pub fn n_squares(&self) -> usize {
        self.key.len() / 2
    }

    pub fn representative(&self, mark_all_vertices: bool) -> Origami {
        let n = self.n_squares();
        let h = Permutation::from_images(self.key[..n].iter().map(|&x| x as usize).collect())
            .expect("canonical key encodes a permutation");
        let v = Permutation::from_images(self.key[n..].iter().map(|&x| x as usize).collect())
            .expect("canonical key encodes a permutation");
        Origami::from_parts(h, v, mark_all_vertices)
    }
}

/// Permutation action of `S` and `T` on the orbit of the basepoint class.
#[derive(Clone, Debug)]
pub struct CosetTable {
    pub orbit: Vec<OrigamiClass>,
    pub sigma_s: Permutation,
    pub sigma_t: Permutation,
    mark_all_vertices: bool,
}

impl CosetTable {
    pub fn mu(&self) -> usize {
        self.orbit.len()
    }

    pub fn class_index(&self, class: &OrigamiClass) -> Option<usize> {
        self.orbit.iter().position(|c| c == class)
    }

    pub fn representative(&self, index: usize) -> Origami {
        self.orbit[index].representative(self.mark_all_vertices)
    }

    /// Image of orbit point `index` under the matrix `m`.
    pub fn act(&self, m: &Mat2, index: usize) -> Result<usize, VeechError> {
        let word = word_decompose(m)?;
        Ok(self.trace(&word, index))
    }

    fn trace(&self, word: &Word, mut index: usize) -> usize {
        let t_inv = self.sigma_t.inverse();
        for letter in word.0.iter().rev() {
            match *letter {
                Letter::S => index = self.sigma_s.apply(index),
                Letter::T(k) => {
                    let step = if k > 0 { &self.sigma_t } else { &t_inv };
                    for _ in 0..k.unsigned_abs() {
                        index = step.apply(index);
                    }
                }
            }
        }
        index
    }

    /// Length of the `T`-cycle through `index`: the cusp width of that orbit point.
    pub fn cusp_width_at(&self, index: usize) -> u64 {
        let mut x = self.sigma_t.apply(index);
        let mut len = 1;
        while x != index {
            x = self.sigma_t.apply(x);
            len += 1;
        }
        len
    }

    pub fn relations_hold(&self) -> bool {
        let st = self.sigma_s.compose(&self.sigma_t);
        self.sigma_s.compose(&self.sigma_s).is_identity() && st.pow(3).is_identity()
    }
}

pub fn orbit_and_stabilizer(o: &Origami, cap: usize) -> Result<CosetTable, VeechError> {
    let mark = o.mark_all_vertices();
    let base = OrigamiClass::of(o);
    let mut index: HashMap<OrigamiClass, usize> = HashMap::from([(base.clone(), 0)]);
    let mut orbit = vec![base];
    let mut sigma_t = Vec::new();
    let mut sigma_s = Vec::new();
    if cap == 0 {
        return Err(VeechError::OrbitCap { cap, explored: 1 });
    }
    let mut i = 0;
    while i < orbit.len() {
        let rep = orbit[i].representative(mark);
        for (gen, sigma) in [(Generator::T, &mut sigma_t), (Generator::S, &mut sigma_s)] {
            let class = OrigamiClass::of(&act_generator(gen, &rep));
            let next = orbit.len();
            let j = *index.entry(class.clone()).or_insert(next);
            if j == next {
                orbit.push(class);
                if orbit.len() > cap {
                    return Err(VeechError::OrbitCap {
                        cap,
                        explored: orbit.len(),
                    });
                }
            }
            sigma.push(j);
        }
        i += 1;
    }
    Ok(CosetTable {
        orbit,
        sigma_s: Permutation::from_images(sigma_s).expect("S acts bijectively"),
        sigma_t: Permutation::from_images(sigma_t).expect("T acts bijectively"),
        mark_all_vertices: mark,
    })
}

/// Order of a cone point or cusp of the quotient orbifold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Nu {
    Finite(u64),
    Infinite,
}

impl Nu {
    /// `1 - 1/ν`.
    pub fn defect(&self) -> Q {
        match self {
            Nu::Finite(k) => Q::new(*k as i64 - 1, *k as i64),
            Nu::Infinite => Q::from_integer(1),
        }
    }
}

impl fmt::Display for Nu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nu::Finite(k) => write!(f, "{k}"),
            Nu::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSignature {
    pub p: u64,
    pub e2: usize,
    pub e3: usize,
    pub k0: usize,
    pub mu: usize,
    /// Sorted widths of all cusps.
    pub cusp_widths: Vec<u64>,
    /// Cusp width at the basepoint (the cusp at ∞ of the surface as given).
    pub b0: u64,
}

impl GroupSignature {
    pub fn k(&self) -> usize {
        self.e2 + self.e3 + self.k0
    }

    pub fn nu_list(&self) -> Vec<Nu> {
        let mut out = vec![Nu::Finite(2); self.e2];
        out.extend(std::iter::repeat_n(Nu::Finite(3), self.e3));
        out.extend(std::iter::repeat_n(Nu::Infinite, self.k0));
        out
    }

    /// Hyperbolic area divided by π, from the index.
    pub fn area_over_pi(&self) -> Q {
        Q::new(self.mu as i64, 3)
    }

    /// Hyperbolic area divided by π, from the signature: `2(2p - 2 + Σ(1 - 1/νᵢ))`.
    pub fn area_over_pi_from_signature(&self) -> Q {
        let sum = self
            .nu_list()
            .iter()
            .fold(Q::from_integer(0), |acc, nu| acc + nu.defect());
        (Q::from_integer(2 * self.p as i64 - 2) + sum) * 2
    }

    pub fn area(&self) -> f64 {
        self.mu as f64 * std::f64::consts::PI / 3.0
    }
}

pub fn signature(ct: &CosetTable) -> Result<GroupSignature, VeechError> {
    let mu = ct.mu();
    let e2 = ct.sigma_s.fixed_points();
    let e3 = ct.sigma_s.compose(&ct.sigma_t).fixed_points();
    let cycles = ct.sigma_t.cycles();
    let k0 = cycles.len();
    let mut cusp_widths: Vec<u64> = cycles.iter().map(|c| c.len() as u64).collect();
    cusp_widths.sort_unstable();
    let twelve_p = 12 + mu as i64 - 3 * e2 as i64 - 4 * e3 as i64 - 6 * k0 as i64;
    if twelve_p < 0 || twelve_p % 12 != 0 {
        return Err(VeechError::NonIntegralGenus { mu, e2, e3, k0 });
    }
    Ok(GroupSignature {
        p: (twelve_p / 12) as u64,
        e2,
        e3,
        k0,
        mu,
        cusp_widths,
        b0: ct.cusp_width_at(0),
    })
}

/// Whether `M` stabilizes the orbit point `base` (projectively).
pub fn membership_at(m: &Mat2, ct: &CosetTable, base: usize) -> Result<bool, VeechError> {
    Ok(ct.act(m, base)? == base)
}

/// Whether `M` lies in the Veech group of the basepoint.
pub fn membership(m: &Mat2, ct: &CosetTable) -> Result<bool, VeechError> {
    membership_at(m, ct, 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct C1 {
    pub c1: u64,
    pub witness: Mat2,
}

pub const DEFAULT_CANDIDATE_CAP: u64 = 50_000_000;

/// Smallest `c ≥ 1` such that the stabilizer of orbit point `base` contains a
/// matrix with lower-left entry `±c`.
///
/// `b0` must be the cusp width at `base`. Matrices with first column `(a, c)`
/// are `M₀·Tᵗ`; translating by the parabolic `T^{b0}` on either side reduces
/// the search to `a mod b0·c` and `t mod b0`. An element with
/// `b0·c < area − k0 + 1` always exists, which bounds the search.
pub fn c1_search_at(
    ct: &CosetTable,
    sig: &GroupSignature,
    base: usize,
    b0: u64,
    candidate_cap: u64,
) -> Result<C1, VeechError> {
    let bound = sig.area() - sig.k0 as f64 + 1.0;
    let b0i = b0 as i64;
    let mut tried = 0u64;
    let mut c: i64 = 1;
    while ((b0i * c) as f64) < bound * (1.0 + FLOAT_GUARD) {
        for a in 0..b0i * c {
            if a.gcd(&c) != 1 {
                continue;
            }
            // a·d − b·c = 1
            let (_, x, y) = ext_gcd(a, c);
            let m0 = Mat2::new(a, -y, c, x);
            debug_assert_eq!(m0.det(), 1);
            for t in 0..b0i {
                tried += 1;
                if tried > candidate_cap {
                    return Err(VeechError::CandidateCap(candidate_cap));
                }
                let m = m0 * Mat2::t_pow(t);
                if membership_at(&m, ct, base)? {
                    return Ok(C1 {
                        c1: c as u64,
                        witness: m,
                    });
                }
            }
        }
        c += 1;
    }
    Err(VeechError::TerminationBound { bound, b0 })
}

pub fn c1_search(ct: &CosetTable, sig: &GroupSignature) -> Result<C1, VeechError> {
    c1_search_at(ct, sig, 0, sig.b0, DEFAULT_CANDIDATE_CAP)
}

/// Heuristic reducedness test: the lattice spanned by saddle connections in
/// the horizontal, vertical and diagonal directions is all of `ℤ²`.
///
/// Returns the index of that lattice in `ℤ²` (1 means reduced).
pub fn period_lattice_index(o: &Origami) -> u64 {
    let gcd_in = |d: Direction| -> u64 {
        match decomposition_in_direction(o, d) {
            Ok(dec) => dec
                .cylinders
                .iter()
                .flat_map(|c| c.bottom_saddle_lengths.iter().copied())
                .fold(0, |acc, x| acc.gcd(&x)),
            Err(_) => 0,
        }
    };
    let gh = gcd_in(Direction::HORIZONTAL);
    let gv = gcd_in(Direction::VERTICAL);
    let gd = gcd_in(Direction::new(1, 1).expect("valid"));
    // vectors (gh,0), (0,gv), (gd,gd): index = gcd of 2×2 minors
    (gh * gv).gcd(&(gh * gd)).gcd(&(gv * gd))
}

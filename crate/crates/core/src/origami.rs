//! Square-tiled surfaces encoded by a pair of permutations.
//!
//! Square `s` has right neighbour `h(s)` and upper neighbour `v(s)`. The
//! vertex at the bottom-left corner of square `s` is the cycle of the
//! commutator `h∘v∘h⁻¹∘v⁻¹` through `s`; its cone angle is `2π` times the
//! cycle length.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::perm::{is_transitive, PermError, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrigamiError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("missing `{0}=` entry")]
    Missing(&'static str),
    #[error("{which}: {source}")]
    Perm {
        which: &'static str,
        #[source]
        source: PermError,
    },
    #[error("h and v act on {h} and {v} squares")]
    DegreeMismatch { h: usize, v: usize },
    #[error("h and v do not act transitively: the surface is disconnected")]
    NotTransitive,
    #[error("origami needs at least one square")]
    Empty,
    #[error(
        "unstable type: no marked vertex (3g-3 = {three_g_minus_3} <= 0); \
         use mark_all_vertices to mark the regular vertices"
    )]
    UnstableType { three_g_minus_3: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Origami {
    h: Permutation,
    v: Permutation,
    mark_all_vertices: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    /// The commutator cycle (0-based squares) whose bottom-left corner is this vertex.
    pub squares: Vec<usize>,
    /// Cone angle is `2π · cone_multiple`.
    pub cone_multiple: usize,
    pub marked: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceType {
    pub g: u64,
    pub n: u64,
}

impl SurfaceType {
    /// `3g - 3 + n`, the complex dimension of the Teichmüller space.
    pub fn dim(&self) -> u64 {
        3 * self.g + self.n - 3
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// An automorphism with derivative `+I` (translation) or `-I` (point symmetry).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KernelElement {
    pub tau: Permutation,
    pub sign: Sign,
}

impl KernelElement {
    pub fn compose(&self, other: &Self) -> Self {
        KernelElement {
            tau: self.tau.compose(&other.tau),
            sign: self.sign * other.sign,
        }
    }

    pub fn inverse(&self) -> Self {
        KernelElement {
            tau: self.tau.inverse(),
            sign: self.sign,
        }
    }

    pub fn is_automorphism_of(&self, o: &Origami) -> bool {
        let (h, v) = match self.sign {
            Sign::Plus => (o.h.clone(), o.v.clone()),
            Sign::Minus => (o.h.inverse(), o.v.inverse()),
        };
        self.tau.compose(&o.h) == h.compose(&self.tau)
            && self.tau.compose(&o.v) == v.compose(&self.tau)
    }
}

impl Origami {
    pub fn new(
        h: Permutation,
        v: Permutation,
        mark_all_vertices: bool,
    ) -> Result<Self, OrigamiError> {
        if h.len() != v.len() {
            return Err(OrigamiError::DegreeMismatch {
                h: h.len(),
                v: v.len(),
            });
        }
        if h.is_empty() {
            return Err(OrigamiError::Empty);
        }
        if !is_transitive(h.len(), &[&h, &v]) {
            return Err(OrigamiError::NotTransitive);
        }
        Ok(Origami {
            h,
            v,
            mark_all_vertices,
        })
    }

    /// Trusted constructor for pairs already known to be transitive.
    pub(crate) fn from_parts(h: Permutation, v: Permutation, mark_all_vertices: bool) -> Self {
        debug_assert!(is_transitive(h.len(), &[&h, &v]));
        Origami {
            h,
            v,
            mark_all_vertices,
        }
    }

    pub fn torus() -> Self {
        Self::from_parts(Permutation::identity(1), Permutation::identity(1), true)
    }

    /// Parses the text format:
    ///
    /// ```text
    /// n=3
    /// h=(1 2)
    /// v=[3,2,1]
    /// mark_all_vertices=true
    /// ```
    ///
    /// Entries may also be separated by `;`. Lines starting with `#` are comments.
    pub fn parse(text: &str) -> Result<Self, OrigamiError> {
        let mut n = None;
        let mut h_text = None;
        let mut v_text = None;
        let mut mark = false;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("");
            for entry in line.split(';') {
                let entry = entry.trim();
                if entry.is_empty() {
                    continue;
                }
                let err = |reason: String| OrigamiError::Parse {
                    line: lineno + 1,
                    reason,
                };
                let (key, value) = entry
                    .split_once('=')
                    .ok_or_else(|| err(format!("expected `key=value`, got `{entry}`")))?;
                let value = value.trim();
                match key.trim() {
                    "n" => {
                        let parsed = value
                            .parse::<usize>()
                            .map_err(|_| err(format!("bad square count `{value}`")))?;
                        n = Some(parsed);
                    }
                    "h" => h_text = Some(value.to_string()),
                    "v" => v_text = Some(value.to_string()),
                    "mark_all_vertices" => {
                        mark = match value {
                            "true" | "1" | "yes" => true,
                            "false" | "0" | "no" => false,
                            _ => return Err(err(format!("bad boolean `{value}`"))),
                        }
                    }
                    other => return Err(err(format!("unknown key `{other}`"))),
                }
            }
        }
        let n = n.ok_or(OrigamiError::Missing("n"))?;
        if n == 0 {
            return Err(OrigamiError::Empty);
        }
        let h = Permutation::parse(&h_text.ok_or(OrigamiError::Missing("h"))?, n)
            .map_err(|source| OrigamiError::Perm { which: "h", source })?;
        let v = Permutation::parse(&v_text.ok_or(OrigamiError::Missing("v"))?, n)
            .map_err(|source| OrigamiError::Perm { which: "v", source })?;
        Self::new(h, v, mark)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("n={}\nh={}\nv={}\n", self.n_squares(), self.h, self.v);
        if self.mark_all_vertices {
            s.push_str("mark_all_vertices=true\n");
        }
        s
    }

    pub fn n_squares(&self) -> usize {
        self.h.len()
    }

    pub fn h(&self) -> &Permutation {
        &self.h
    }

    pub fn v(&self) -> &Permutation {
        &self.v
    }

    pub fn mark_all_vertices(&self) -> bool {
        self.mark_all_vertices
    }

    pub fn with_marking(&self, mark_all_vertices: bool) -> Self {
        Origami {
            mark_all_vertices,
            ..self.clone()
        }
    }

    /// `h∘v∘h⁻¹∘v⁻¹`.
    pub fn commutator(&self) -> Permutation {
        self.h
            .compose(&self.v)
            .compose(&self.h.inverse())
            .compose(&self.v.inverse())
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.commutator()
            .cycles()
            .into_iter()
            .map(|squares| {
                let q = squares.len();
                Vertex {
                    squares,
                    cone_multiple: q,
                    marked: q > 1 || self.mark_all_vertices,
                }
            })
            .collect()
    }

    /// For each square, whether the vertex at its bottom-left corner is marked.
    pub fn marked_corners(&self) -> Vec<bool> {
        let mut out = vec![false; self.n_squares()];
        for vx in self.vertices() {
            if vx.marked {
                for &s in &vx.squares {
                    out[s] = true;
                }
            }
        }
        out
    }

    pub fn genus(&self) -> u64 {
        let verts = self.commutator().cycles().len() as i64;
        let twice = 2 - verts + self.n_squares() as i64;
        assert!(
            twice >= 0 && twice % 2 == 0,
            "Euler characteristic parity failure (V={verts}, N={})",
            self.n_squares()
        );
        (twice / 2) as u64
    }

    pub fn n_marked(&self) -> u64 {
        self.vertices().iter().filter(|v| v.marked).count() as u64
    }

    pub fn surface_type(&self) -> Result<SurfaceType, OrigamiError> {
        let g = self.genus();
        let n = self.n_marked();
        if n == 0 || 3 * g as i64 - 3 + n as i64 <= 0 {
            return Err(OrigamiError::UnstableType {
                three_g_minus_3: 3 * g as i64 - 3,
            });
        }
        Ok(SurfaceType { g, n })
    }

    /// Tries to extend `0 ↦ target` to an automorphism of the given sign.
    fn extend_automorphism(&self, target: usize, sign: Sign) -> Option<Permutation> {
        let n = self.n_squares();
        let (hi, vi) = (self.h.inverse(), self.v.inverse());
        let (h_img, v_img) = match sign {
            Sign::Plus => (&self.h, &self.v),
            Sign::Minus => (&hi, &vi),
        };
        let mut tau: Vec<Option<usize>> = vec![None; n];
        let mut used = vec![false; n];
        tau[0] = Some(target);
        used[target] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(s) = queue.pop_front() {
            let ts = tau[s].unwrap();
            for (src, dst) in [
                (self.h.apply(s), h_img.apply(ts)),
                (self.v.apply(s), v_img.apply(ts)),
            ] {
                match tau[src] {
                    Some(existing) if existing != dst => return None,
                    Some(_) => {}
                    None => {
                        if used[dst] {
                            return None;
                        }
                        used[dst] = true;
                        tau[src] = Some(dst);
                        queue.push_back(src);
                    }
                }
            }
        }
        let images = tau.into_iter().collect::<Option<Vec<_>>>()?;
        let tau = Permutation::from_images(images).ok()?;
        Some(tau)
    }

    /// All automorphisms with derivative `±I`, translations first.
    pub fn kernel_of_d(&self) -> Vec<KernelElement> {
        let mut out = Vec::new();
        for sign in [Sign::Plus, Sign::Minus] {
            for target in 0..self.n_squares() {
                if let Some(tau) = self.extend_automorphism(target, sign) {
                    let el = KernelElement { tau, sign };
                    debug_assert!(el.is_automorphism_of(self));
                    out.push(el);
                }
            }
        }
        out
    }

    pub fn translations(&self) -> Vec<Permutation> {
        (0..self.n_squares())
            .filter_map(|t| self.extend_automorphism(t, Sign::Plus))
            .collect()
    }

    /// Quotient by the translation subgroup of `Ker(D)`. Returns the quotient
    /// origami and the projection `square ↦ quotient square`.
    pub fn quotient_by_translations(&self) -> (Origami, Vec<usize>) {
        let translations = self.translations();
        let n = self.n_squares();
        let mut proj = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if proj[s] != usize::MAX {
                continue;
            }
            for t in &translations {
                proj[t.apply(s)] = count;
            }
            count += 1;
        }
        let mut reps = vec![0; count];
        for s in (0..n).rev() {
            reps[proj[s]] = s;
        }
        let h = reps.iter().map(|&s| proj[self.h.apply(s)]).collect();
        let v = reps.iter().map(|&s| proj[self.v.apply(s)]).collect();
        let h = Permutation::from_images(h).expect("translations commute with h");
        let v = Permutation::from_images(v).expect("translations commute with v");
        (Origami::from_parts(h, v, self.mark_all_vertices), proj)
    }
}

impl fmt::Display for Origami {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}; h={}; v={}", self.n_squares(), self.h, self.v)?;
        if self.mark_all_vertices {
            write!(f, "; mark_all_vertices=true")?;
        }
        Ok(())
    }
}

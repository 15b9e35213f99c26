//! Closed-form bounds and the verification of every inequality behind them.
//!
//! Writing `t = 3g − 3 + n` for the surface type and `(p, k; ν₁…ν_k)` for the
//! Veech group signature, the evaluated quantities are
//!
//! * `32π(2p−2+k)·t²·(2t + 3e^{5t/e})`, the bound on holomorphic sections;
//! * `4π·e^{5t/e}·(2p−2+Σ(1−1/νᵣ))`, the bound on `√(mod(Rᵢ)/mod(Rⱼ))`;
//! * `32π(2p−2+k)·t²·(3g−2+n) − 2g + 2`, the bound for a simple
//!   Jenkins–Strebel direction;
//! * `2·b₀c₁·K·Σᵢ(K + 3·mod(Rᵢ)/b₀)` with `K = ♯Ker(D)`, evaluated exactly.
//!
//! Rational-vs-rational comparisons are exact. Comparisons involving π or
//! `e` pass only when they hold with a relative margin of [`FLOAT_GUARD`].

use std::collections::HashMap;
use std::f64::consts::{E, PI};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::cylinders::{
    decomposition_in_direction, integer_lcm, moduli_ratio_check, rational_lcm, reduce_direction,
    CylinderDecomposition, CylinderError, Direction,
};
use crate::origami::{Origami, OrigamiError, Sign, SurfaceType};
use crate::report::{QStr, F15};
use crate::sl2::Mat2;
use crate::veech::{
    c1_search_at, orbit_and_stabilizer, period_lattice_index, signature, CosetTable,
    GroupSignature, Nu, VeechError, C1, DEFAULT_CANDIDATE_CAP, FLOAT_GUARD,
};
use crate::Q;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("type (g,n) = ({g},{n}) has 3g-3+n <= 0")]
    UnstableSurface { g: i64, n: i64 },
    #[error("base of type (p,k) = ({p},{k}) is not hyperbolic: 2p-2+k <= 0")]
    NonHyperbolicBase { p: i64, k: i64 },
    #[error("signature with 2p-2+Σ(1-1/ν) <= 0 is not hyperbolic")]
    NonHyperbolicSignature,
}

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Origami(#[from] OrigamiError),
    #[error(transparent)]
    Veech(#[from] VeechError),
    #[error(transparent)]
    Cylinder(#[from] CylinderError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

/// Landau's function: the largest order of a permutation of `m` letters,
/// i.e. the largest lcm of a partition of `m`.
///
/// Knapsack over primes: an optimal partition uses parts that are powers of
/// distinct primes (padded with ones).
pub fn landau(m: u64) -> BigUint {
    let m = m as usize;
    let mut best = vec![BigUint::one(); m + 1];
    for p in primes_up_to(m) {
        let mut next = best.clone();
        let mut pk = p;
        while pk <= m {
            for s in pk..=m {
                let cand = &best[s - pk] * BigUint::from(pk);
                if cand > next[s] {
                    next[s] = cand;
                }
            }
            pk *= p;
        }
        best = next;
    }
    best.swap_remove(m)
}

fn primes_up_to(m: usize) -> Vec<usize> {
    let mut sieve = vec![true; m + 1];
    let mut out = Vec::new();
    for i in 2..=m {
        if sieve[i] {
            out.push(i);
            let mut j = i * i;
            while j <= m {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

/// Massias' constant in `log G(m) ≤ 1.05313·√(m log m)`.
pub const MASSIAS_CONSTANT: f64 = 1.05313;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SmallerBound {
    ExpForm,
    Massias,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MassiasComparison {
    /// `exp(m/e)`
    pub exp_form: f64,
    /// `exp(1.05313·√(m ln m))`
    pub massias: f64,
    pub smaller: SmallerBound,
}

pub fn massias_comparison(m: u64) -> MassiasComparison {
    let mf = m as f64;
    let log_exp = mf / E;
    let log_massias = MASSIAS_CONSTANT * (mf * mf.ln()).sqrt();
    MassiasComparison {
        exp_form: log_exp.exp(),
        massias: log_massias.exp(),
        smaller: if log_exp <= log_massias {
            SmallerBound::ExpForm
        } else {
            SmallerBound::Massias
        },
    }
}

fn surface_dim(g: u64, n: u64) -> Result<f64, BoundsError> {
    let t = 3 * g as i64 - 3 + n as i64;
    if t <= 0 {
        return Err(BoundsError::UnstableSurface {
            g: g as i64,
            n: n as i64,
        });
    }
    Ok(t as f64)
}

fn base_euler(p: u64, k: u64) -> Result<f64, BoundsError> {
    let chi = 2 * p as i64 - 2 + k as i64;
    if chi <= 0 {
        return Err(BoundsError::NonHyperbolicBase {
            p: p as i64,
            k: k as i64,
        });
    }
    Ok(chi as f64)
}

/// `e^{5t/e}` for `t = 3g−3+n`.
pub fn exp_five_t(t: f64) -> f64 {
    (5.0 * t / E).exp()
}

/// Upper bound on the number of holomorphic sections of a Veech family.
pub fn thm31_bound(g: u64, n: u64, p: u64, k: u64) -> Result<f64, BoundsError> {
    let t = surface_dim(g, n)?;
    let chi = base_euler(p, k)?;
    Ok(32.0 * PI * chi * t * t * (2.0 * t + 3.0 * exp_five_t(t)))
}

/// `2p − 2 + Σ(1 − 1/νᵣ)` as an exact rational.
pub fn orbifold_euler(p: u64, nu_list: &[Nu]) -> Q {
    nu_list
        .iter()
        .fold(Q::from_integer(2 * p as i64 - 2), |acc, nu| {
            acc + nu.defect()
        })
}

/// Right-hand side of the bound on `√(mod(Rᵢ)/mod(Rⱼ))`.
pub fn thm32_rhs(g: u64, n: u64, p: u64, nu_list: &[Nu]) -> Result<f64, BoundsError> {
    let t = surface_dim(g, n)?;
    let chi = orbifold_euler(p, nu_list);
    if chi <= Q::from_integer(0) {
        return Err(BoundsError::NonHyperbolicSignature);
    }
    Ok(4.0 * PI * exp_five_t(t) * chi.to_f64().expect("small rational"))
}

/// Section bound when the surface has a simple Jenkins–Strebel direction.
pub fn simple_js_bound(g: u64, n: u64, p: u64, k: u64) -> Result<f64, BoundsError> {
    let t = surface_dim(g, n)?;
    let chi = base_euler(p, k)?;
    let tail = 3.0 * g as f64 - 2.0 + n as f64;
    Ok(32.0 * PI * chi * t * t * tail - 2.0 * g as f64 + 2.0)
}

/// `2·b₀c₁·K·Σᵢ(K + 3·mod(Rᵢ)/b₀)`.
pub fn prop_bound(b0: u64, c1: u64, kernel_order: u64, moduli: &[Q]) -> Q {
    let b0q = Q::from_integer(b0 as i64);
    let kq = Q::from_integer(kernel_order as i64);
    let sum = moduli
        .iter()
        .fold(Q::from_integer(0), |acc, m| acc + kq + *m * 3 / b0q);
    Q::from_integer(2 * (b0 * c1 * kernel_order) as i64) * sum
}

/// `⌈b₀·K / mod(Rᵢ)⌉`.
pub fn ij0_bound(b0: u64, kernel_order: u64, modulus: Q) -> i64 {
    (Q::from_integer((b0 * kernel_order) as i64) / modulus)
        .ceil()
        .to_integer()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Exact(QStr),
    Float(F15),
    Bool(bool),
}

impl Value {
    fn exact(q: Q) -> Self {
        Value::Exact(QStr(q))
    }

    fn float(x: f64) -> Self {
        Value::Float(F15(x))
    }

    fn as_f64(&self) -> f64 {
        match *self {
            Value::Int(i) => i as f64,
            Value::Exact(QStr(q)) => q.to_f64().expect("small rational"),
            Value::Float(F15(x)) => x,
            Value::Bool(b) => b as u8 as f64,
        }
    }

    fn as_q(&self) -> Option<Q> {
        match *self {
            Value::Int(i) => Some(Q::from_integer(i)),
            Value::Exact(QStr(q)) => Some(q),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = "divides")]
    Divides,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub lhs: Value,
    pub rhs: Value,
    pub relation: Relation,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, lhs: Value, relation: Relation, rhs: Value) -> Self {
        let pass = evaluate(&lhs, relation, &rhs);
        Check {
            name: name.into(),
            lhs,
            rhs,
            relation,
            pass,
        }
    }
}

fn evaluate(lhs: &Value, rel: Relation, rhs: &Value) -> bool {
    if let (Value::Bool(a), Value::Bool(b)) = (lhs, rhs) {
        return rel == Relation::Eq && a == b;
    }
    match (lhs.as_q(), rhs.as_q()) {
        (Some(a), Some(b)) => match rel {
            Relation::Lt => a < b,
            Relation::Le => a <= b,
            Relation::Eq => a == b,
            Relation::Ge => a >= b,
            Relation::Gt => a > b,
            Relation::Divides => a != Q::from_integer(0) && (b / a).is_integer(),
        },
        _ => {
            let (a, b) = (lhs.as_f64(), rhs.as_f64());
            let margin = FLOAT_GUARD * a.abs().max(b.abs());
            match rel {
                Relation::Lt | Relation::Le => a < b - margin,
                Relation::Gt | Relation::Ge => a > b + margin,
                Relation::Eq => (a - b).abs() <= margin,
                Relation::Divides => false,
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SurfaceSection {
    pub n_squares: usize,
    pub h: String,
    pub v: String,
    pub mark_all_vertices: bool,
    pub genus: u64,
    pub n_marked: u64,
    /// `3g − 3 + n`
    pub dim: u64,
    pub cone_multiples: Vec<usize>,
    pub period_lattice_index: u64,
    pub reduced: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SignatureSection {
    pub mu: usize,
    pub p: u64,
    pub k: usize,
    pub k0: usize,
    pub e2: usize,
    pub e3: usize,
    pub nu: Vec<String>,
    pub area_over_pi: QStr,
    pub area: F15,
    pub cusp_widths: Vec<u64>,
    pub b0: u64,
    pub c1: u64,
    pub c1_witness: Mat2,
    pub thm31_bound: F15,
    pub thm32_rhs: F15,
    pub simple_js_bound: F15,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientSection {
    pub n_squares: usize,
    pub genus: u64,
    pub n_marked: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelSection {
    pub order: u64,
    pub translations: u64,
    pub point_symmetries: u64,
    pub translation_only: bool,
    pub quotient: QuotientSection,
}

#[derive(Clone, Debug, Serialize)]
pub struct CylinderRow {
    pub width: u64,
    pub height: u64,
    pub modulus: QStr,
    pub s1: u64,
    pub s2: u64,
    pub ij0_bound: i64,
    /// Index of the image cylinder in the translation quotient.
    pub sigma: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DirectionSection {
    pub slope: String,
    pub m: usize,
    /// `m = 3g − 3 + n`: the cylinder-count bound is attained.
    pub m_attains_dim: bool,
    pub cylinders: Vec<CylinderRow>,
    pub saddle_total: u64,
    pub b0: u64,
    pub c1: u64,
    pub c1_witness: Mat2,
    pub moduli_lcm: QStr,
    pub integer_lcm: i64,
    pub alpha_eff: QStr,
    pub n_i: Vec<QStr>,
    pub moduli_ratios: Vec<QStr>,
    pub prop_bound: QStr,
    pub cross_sum: QStr,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub surface: SurfaceSection,
    pub signature: SignatureSection,
    pub kernel: KernelSection,
    pub directions: Vec<DirectionSection>,
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
}

impl BoundsReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub directions: Vec<Direction>,
    pub orbit_cap: usize,
    pub candidate_cap: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            directions: vec![
                Direction::HORIZONTAL,
                Direction::VERTICAL,
                Direction::new(1, 1).expect("valid"),
            ],
            orbit_cap: 1_000_000,
            candidate_cap: DEFAULT_CANDIDATE_CAP,
        }
    }
}

/// Everything computed for one surface, before it is flattened into a report.
struct Context<'a> {
    origami: &'a Origami,
    st: SurfaceType,
    t: f64,
    kernel_order: u64,
    quotient: (Origami, Vec<usize>),
    ct: CosetTable,
    sig: GroupSignature,
    thm31: f64,
    thm32: f64,
    c1_cache: HashMap<usize, C1>,
    candidate_cap: u64,
}

impl Context<'_> {
    fn c1_at(&mut self, index: usize, b0: u64) -> Result<C1, VeechError> {
        if let Some(c) = self.c1_cache.get(&index) {
            return Ok(*c);
        }
        let c = c1_search_at(&self.ct, &self.sig, index, b0, self.candidate_cap)?;
        self.c1_cache.insert(index, c);
        Ok(c)
    }

    fn group_checks(&self, prefix: &str, b0: u64, c1: u64, checks: &mut Vec<Check>) {
        let area = self.sig.area();
        let b0c1 = (b0 * c1) as i64;
        checks.push(Check::new(
            format!("{prefix}shimizu"),
            Value::Int(b0c1),
            Relation::Ge,
            Value::Int(1),
        ));
        checks.push(Check::new(
            format!("{prefix}b0c1_le_area"),
            Value::Int(b0c1),
            Relation::Le,
            Value::float(area),
        ));
        checks.push(Check::new(
            format!("{prefix}b0c1_lt_area_minus_k0_plus_1"),
            Value::Int(b0c1),
            Relation::Lt,
            Value::float(area - self.sig.k0 as f64 + 1.0),
        ));
    }

    fn direction(
        &mut self,
        d: Direction,
        checks: &mut Vec<Check>,
    ) -> Result<DirectionSection, AnalysisError> {
        let dec = decomposition_in_direction(self.origami, d)?;
        let prefix = format!("{d}:");
        let u = reduce_direction(d);
        let index = self.ct.act(&u, 0)?;
        let b0 = self.ct.cusp_width_at(index);
        let c1 = self.c1_at(index, b0)?;
        let st = self.st;
        let t = self.t;
        let k = self.kernel_order;
        let area = self.sig.area();
        let moduli = dec.moduli();
        let int = |x: u64| Value::Int(x as i64);

        checks.push(Check::new(
            format!("{prefix}area_conservation"),
            int(dec.total_area()),
            Relation::Eq,
            int(self.origami.n_squares() as u64),
        ));
        checks.push(Check::new(
            format!("{prefix}euler_identity"),
            int(dec.saddle_total()),
            Relation::Eq,
            Value::Int(2 * (2 * st.g as i64 - 2 + st.n as i64)),
        ));
        checks.push(Check::new(
            format!("{prefix}saddle_bound"),
            int(dec.saddle_total()),
            Relation::Le,
            int(4 * st.dim()),
        ));
        checks.push(Check::new(
            format!("{prefix}cylinder_count"),
            int(dec.m() as u64),
            Relation::Le,
            int(st.dim()),
        ));
        let ratios = moduli_ratio_check(&dec);
        checks.push(Check::new(
            format!("{prefix}moduli_ratios_positive_rational"),
            Value::Int(ratios.iter().filter(|r| **r > Q::from_integer(0)).count() as i64),
            Relation::Eq,
            Value::Int(ratios.len() as i64),
        ));

        let lcm = rational_lcm(&moduli).expect("at least one cylinder");
        let ilcm = integer_lcm(&moduli);
        checks.push(Check::new(
            format!("{prefix}b0_divides_lcm"),
            int(b0),
            Relation::Divides,
            Value::Int(ilcm),
        ));

        self.group_checks(&prefix, b0, c1.c1, checks);

        let b0q = Q::from_integer(b0 as i64);
        let b0_over_mod: Vec<Q> = moduli.iter().map(|m| b0q / m).collect();
        let min_ratio = *b0_over_mod.iter().min().expect("m >= 1");
        let max_ratio = *b0_over_mod.iter().max().expect("m >= 1");
        checks.push(Check::new(
            format!("{prefix}b0_modulus_ratio_lower"),
            Value::float(0.5 * (-5.0 * t / E).exp()),
            Relation::Lt,
            Value::exact(min_ratio),
        ));
        checks.push(Check::new(
            format!("{prefix}b0_modulus_ratio_upper"),
            Value::exact(max_ratio),
            Relation::Lt,
            Value::float(2.0 * exp_five_t(t) * area * area),
        ));

        let max_mod = *moduli.iter().max().expect("m >= 1");
        let min_mod = *moduli.iter().min().expect("m >= 1");
        let spread = (max_mod / min_mod).to_f64().expect("small rational").sqrt();
        checks.push(Check::new(
            format!("{prefix}moduli_spread"),
            Value::float(spread),
            Relation::Lt,
            Value::float(self.thm32),
        ));

        let alpha = lcm / b0q;
        let n_i: Vec<Q> = moduli.iter().map(|m| alpha * b0q / m).collect();
        checks.push(Check::new(
            format!("{prefix}alpha_integrality"),
            Value::Int(
                n_i.iter()
                    .filter(|x| x.is_integer() && **x >= Q::from_integer(1))
                    .count() as i64,
            ),
            Relation::Eq,
            Value::Int(n_i.len() as i64),
        ));
        checks.push(Check::new(
            format!("{prefix}alpha_bound"),
            Value::exact(alpha),
            Relation::Lt,
            Value::float(2.0 * exp_five_t(t)),
        ));

        let ij0: Vec<i64> = moduli.iter().map(|m| ij0_bound(b0, k, *m)).collect();
        let kq = Q::from_integer(k as i64);
        let cross_sum = moduli
            .iter()
            .zip(&ij0)
            .fold(Q::from_integer(0), |acc, (m, &j)| {
                acc + kq * 2 * *m * (c1.c1 as i64) * (j + 2)
            });
        let prop = prop_bound(b0, c1.c1, k, &moduli);
        checks.push(Check::new(
            format!("{prefix}cross_sum_le_prop_bound"),
            Value::exact(cross_sum),
            Relation::Le,
            Value::exact(prop),
        ));
        checks.push(Check::new(
            format!("{prefix}prop_bound_le_thm31"),
            Value::exact(prop),
            Relation::Le,
            Value::float(self.thm31),
        ));

        let sigma = self.quotient_checks(&prefix, d, &dec, checks)?;

        Ok(DirectionSection {
            slope: d.to_string(),
            m: dec.m(),
            m_attains_dim: dec.m() as u64 == st.dim(),
            cylinders: dec
                .cylinders
                .iter()
                .zip(&ij0)
                .zip(&sigma)
                .map(|((c, &j), &s)| CylinderRow {
                    width: c.width,
                    height: c.height,
                    modulus: QStr(c.modulus()),
                    s1: c.s1,
                    s2: c.s2,
                    ij0_bound: j,
                    sigma: s,
                })
                .collect(),
            saddle_total: dec.saddle_total(),
            b0,
            c1: c1.c1,
            c1_witness: c1.witness,
            moduli_lcm: QStr(lcm),
            integer_lcm: ilcm,
            alpha_eff: QStr(alpha),
            n_i: n_i.into_iter().map(QStr).collect(),
            moduli_ratios: ratios.into_iter().map(QStr).collect(),
            prop_bound: QStr(prop),
            cross_sum: QStr(cross_sum),
        })
    }

    /// Maps each cylinder to its image in `X / translations` and, when every
    /// kernel element is a translation, checks `mod(R)/K ≤ mod(R′) ≤ 2·mod(R)`.
    fn quotient_checks(
        &self,
        prefix: &str,
        d: Direction,
        dec: &CylinderDecomposition,
        checks: &mut Vec<Check>,
    ) -> Result<Vec<usize>, AnalysisError> {
        let (quotient, proj) = &self.quotient;
        // a quotient whose cone points all unfold (e.g. onto a torus) has no
        // singular leaf under the default marking; fall back to marking all
        let quotient = if quotient.n_marked() == 0 {
            quotient.with_marking(true)
        } else {
            quotient.clone()
        };
        let qdec = decomposition_in_direction(&quotient, d)?;
        let mut cyl_of = vec![0; quotient.n_squares()];
        for (j, c) in qdec.cylinders.iter().enumerate() {
            for row in &c.rows {
                for &s in row {
                    cyl_of[s] = j;
                }
            }
        }
        let sigma: Vec<usize> = dec
            .cylinders
            .iter()
            .map(|c| cyl_of[proj[c.rows[0][0]]])
            .collect();
        if self.ker_translation_only() {
            let kq = Q::from_integer(self.kernel_order as i64);
            for (i, (c, &j)) in dec.cylinders.iter().zip(&sigma).enumerate() {
                let m = c.modulus();
                let mq = qdec.cylinders[j].modulus();
                checks.push(Check::new(
                    format!("{prefix}quotient_modulus_lower[{i}]"),
                    Value::exact(m / kq),
                    Relation::Le,
                    Value::exact(mq),
                ));
                checks.push(Check::new(
                    format!("{prefix}quotient_modulus_upper[{i}]"),
                    Value::exact(mq),
                    Relation::Le,
                    Value::exact(m * 2),
                ));
            }
        }
        Ok(sigma)
    }

    fn ker_translation_only(&self) -> bool {
        self.quotient.0.n_squares() as u64 * self.kernel_order == self.origami.n_squares() as u64
    }
}

/// Computes every quantity for `o` and checks every inequality.
pub fn verify_all(o: &Origami, config: &VerifyConfig) -> Result<BoundsReport, AnalysisError> {
    let st = o.surface_type()?;
    let t = st.dim() as f64;
    let kernel = o.kernel_of_d();
    let kernel_order = kernel.len() as u64;
    let translations = kernel.iter().filter(|e| e.sign == Sign::Plus).count() as u64;
    let quotient = o.quotient_by_translations();

    let ct = orbit_and_stabilizer(o, config.orbit_cap)?;
    let sig = signature(&ct)?;
    let k = sig.k() as u64;
    let thm31 = thm31_bound(st.g, st.n, sig.p, k)?;
    let thm32 = thm32_rhs(st.g, st.n, sig.p, &sig.nu_list())?;
    let simple = simple_js_bound(st.g, st.n, sig.p, k)?;

    let mut warnings = Vec::new();
    let lattice_index = period_lattice_index(o);
    if lattice_index != 1 {
        warnings.push(format!(
            "origami looks non-reduced (saddle-connection lattice has index {lattice_index}); \
             Veech group data refer to the square-tiled structure"
        ));
    }

    let mut ctx = Context {
        origami: o,
        st,
        t,
        kernel_order,
        quotient,
        ct,
        sig,
        thm31,
        thm32,
        c1_cache: HashMap::new(),
        candidate_cap: config.candidate_cap,
    };

    let mut checks = vec![
        Check::new(
            "kernel_order_bound",
            Value::Int(kernel_order as i64),
            Relation::Le,
            Value::Int(4 * st.dim() as i64),
        ),
        Check::new(
            "coset_relations",
            Value::Bool(ctx.ct.relations_hold()),
            Relation::Eq,
            Value::Bool(true),
        ),
        Check::new(
            "cusp_width_sum",
            Value::Int(ctx.sig.cusp_widths.iter().sum::<u64>() as i64),
            Relation::Eq,
            Value::Int(ctx.sig.mu as i64),
        ),
        Check::new(
            "area_identity",
            Value::exact(ctx.sig.area_over_pi()),
            Relation::Eq,
            Value::exact(ctx.sig.area_over_pi_from_signature()),
        ),
    ];
    let base_c1 = ctx.c1_at(0, ctx.sig.b0)?;
    ctx.group_checks("", ctx.sig.b0, base_c1.c1, &mut checks);

    let mut directions = Vec::with_capacity(config.directions.len());
    for &d in &config.directions {
        directions.push(ctx.direction(d, &mut checks)?);
    }

    let q = &ctx.quotient.0;
    let sig = &ctx.sig;
    Ok(BoundsReport {
        surface: SurfaceSection {
            n_squares: o.n_squares(),
            h: o.h().to_string(),
            v: o.v().to_string(),
            mark_all_vertices: o.mark_all_vertices(),
            genus: st.g,
            n_marked: st.n,
            dim: st.dim(),
            cone_multiples: o.vertices().iter().map(|v| v.cone_multiple).collect(),
            period_lattice_index: lattice_index,
            reduced: lattice_index == 1,
        },
        signature: SignatureSection {
            mu: sig.mu,
            p: sig.p,
            k: sig.k(),
            k0: sig.k0,
            e2: sig.e2,
            e3: sig.e3,
            nu: sig.nu_list().iter().map(Nu::to_string).collect(),
            area_over_pi: QStr(sig.area_over_pi()),
            area: F15(sig.area()),
            cusp_widths: sig.cusp_widths.clone(),
            b0: sig.b0,
            c1: base_c1.c1,
            c1_witness: base_c1.witness,
            thm31_bound: F15(thm31),
            thm32_rhs: F15(thm32),
            simple_js_bound: F15(simple),
        },
        kernel: KernelSection {
            order: kernel_order,
            translations,
            point_symmetries: kernel_order - translations,
            translation_only: translations == kernel_order,
            quotient: QuotientSection {
                n_squares: q.n_squares(),
                genus: q.genus(),
                n_marked: q.n_marked(),
            },
        },
        directions,
        checks,
        warnings,
    })
}

//! The frozen normal-form tables shipped as `data/metaclasses.json`.

use std::sync::OnceLock;

use medium_exact::qsqrt2::ExactEntry;
use medium_exact::{Mat, QSqrt2, Rational};
use serde::Deserialize;

use crate::MetaclassId;

const DATA: &str = include_str!("../data/metaclasses.json");

#[derive(Deserialize)]
struct RawFile {
    format: String,
    version: u32,
    classes: Vec<RawClass>,
}

#[derive(Deserialize)]
struct RawClass {
    id: MetaclassId,
    label: String,
    segre: RawSegre,
    alphas: usize,
    betas: usize,
    epsilons: usize,
    epsilon_order: String,
    patterns: Vec<RawPattern>,
}

#[derive(Deserialize)]
struct RawSegre {
    real: Vec<usize>,
    complex: Vec<usize>,
}

#[derive(Deserialize)]
struct RawPattern {
    epsilons: Vec<i8>,
    slots: Vec<RawSlot>,
    template: RawTemplate,
    s: Vec<Vec<ExactEntry>>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawSlot {
    Real { size: usize, sign: i8, eigenvalue: RawLinear },
    Complex { size: usize, sigma: RawLinear, tau: RawLinear },
}

#[derive(Deserialize)]
struct RawLinear {
    alpha: Vec<i64>,
    beta: Vec<i64>,
    constant: i64,
}

#[derive(Deserialize)]
struct RawTemplate {
    constant: Vec<RawEntry>,
    alpha: Vec<Vec<RawEntry>>,
    beta: Vec<Vec<RawEntry>>,
}

#[derive(Deserialize)]
struct RawEntry {
    row: usize,
    col: usize,
    value: ExactEntry,
}

/// Integer linear form `Σ αᵢcᵢ + Σ βⱼdⱼ + c₀` in the class parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearForm {
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
    pub constant: i64,
}

impl LinearForm {
    pub fn eval_f64(&self, alphas: &[f64], betas: &[f64]) -> f64 {
        let a: f64 = self.alpha.iter().zip(alphas).map(|(c, x)| *c as f64 * x).sum();
        let b: f64 = self.beta.iter().zip(betas).map(|(c, x)| *c as f64 * x).sum();
        a + b + self.constant as f64
    }

    pub fn eval_exact(&self, alphas: &[Rational], betas: &[Rational]) -> Rational {
        let mut acc = Rational::from_integer(self.constant.into());
        for (c, x) in self.alpha.iter().zip(alphas).chain(self.beta.iter().zip(betas)) {
            acc += Rational::from_integer((*c).into()) * x;
        }
        acc
    }

    /// Coefficient row over the unknowns `(α₁…α_a, β₁…β_b)`.
    pub(crate) fn row(&self, na: usize, nb: usize) -> Vec<i64> {
        self.alpha[..na].iter().chain(&self.beta[..nb]).copied().collect()
    }
}

/// Where one canonical Jordan block sits in a template and how its
/// eigenvalue depends on the parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Slot {
    Real { size: usize, sign: i8, eigenvalue: LinearForm },
    Complex { half_size: usize, sigma: LinearForm, tau: LinearForm },
}

/// Affine template `V = C + Σ αᵢ Aᵢ + Σ βⱼ Bⱼ` as sparse exact entries.
#[derive(Debug, Clone)]
pub struct Template {
    pub constant: Vec<(usize, usize, QSqrt2)>,
    pub alpha: Vec<Vec<(usize, usize, QSqrt2)>>,
    pub beta: Vec<Vec<(usize, usize, QSqrt2)>>,
}

/// One admissible sign assignment of a class together with its stored data.
#[derive(Debug, Clone)]
pub struct SignPattern {
    pub epsilons: Vec<i8>,
    /// Canonical block order: real blocks by decreasing size then sign,
    /// followed by complex blocks.
    pub slots: Vec<Slot>,
    pub template: Template,
    /// `SᵀBS = W` and `S·V_J·S⁻¹ = V`.
    pub s: Mat<QSqrt2>,
}

#[derive(Debug, Clone)]
pub struct MetaclassData {
    pub id: MetaclassId,
    pub label: String,
    pub real_sizes: Vec<usize>,
    pub complex_sizes: Vec<usize>,
    pub alphas: usize,
    pub betas: usize,
    pub epsilons: usize,
    /// True when the printed conditions require `ε₁ ≤ ε₂ ≤ …`.
    pub nondecreasing: bool,
    pub patterns: Vec<SignPattern>,
}

#[derive(Debug)]
pub struct GoldenTables {
    pub format: String,
    pub version: u32,
    pub classes: Vec<MetaclassData>,
}

fn entry(e: &ExactEntry) -> QSqrt2 {
    e.to_qsqrt2().expect("golden data holds a zero denominator")
}

fn sparse(raw: &[RawEntry]) -> Vec<(usize, usize, QSqrt2)> {
    raw.iter().map(|e| (e.row, e.col, entry(&e.value))).collect()
}

fn linear(raw: RawLinear) -> LinearForm {
    LinearForm { alpha: raw.alpha, beta: raw.beta, constant: raw.constant }
}

fn load() -> GoldenTables {
    let raw: RawFile = serde_json::from_str(DATA).expect("golden data is malformed");
    let classes = raw
        .classes
        .into_iter()
        .map(|c| MetaclassData {
            id: c.id,
            label: c.label,
            real_sizes: c.segre.real,
            complex_sizes: c.segre.complex,
            alphas: c.alphas,
            betas: c.betas,
            epsilons: c.epsilons,
            nondecreasing: c.epsilon_order == "nondecreasing",
            patterns: c
                .patterns
                .into_iter()
                .map(|p| SignPattern {
                    epsilons: p.epsilons,
                    slots: p
                        .slots
                        .into_iter()
                        .map(|s| match s {
                            RawSlot::Real { size, sign, eigenvalue } => {
                                Slot::Real { size, sign, eigenvalue: linear(eigenvalue) }
                            }
                            RawSlot::Complex { size, sigma, tau } => {
                                Slot::Complex { half_size: size, sigma: linear(sigma), tau: linear(tau) }
                            }
                        })
                        .collect(),
                    template: Template {
                        constant: sparse(&p.template.constant),
                        alpha: p.template.alpha.iter().map(|v| sparse(v)).collect(),
                        beta: p.template.beta.iter().map(|v| sparse(v)).collect(),
                    },
                    s: Mat::from_rows(&p.s.iter().map(|r| r.iter().map(entry).collect()).collect::<Vec<_>>()),
                })
                .collect(),
        })
        .collect();
    GoldenTables { format: raw.format, version: raw.version, classes }
}

/// The parsed tables, loaded once.
pub fn tables() -> &'static GoldenTables {
    static TABLES: OnceLock<GoldenTables> = OnceLock::new();
    TABLES.get_or_init(load)
}

pub fn class_data(id: MetaclassId) -> &'static MetaclassData {
    &tables().classes[id.index()]
}

/// Raw JSON text of the tables, for export.
pub fn golden_json() -> &'static str {
    DATA
}

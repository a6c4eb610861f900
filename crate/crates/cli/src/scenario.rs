//! Scenario files: the JSON schemas every job kind accepts, and the
//! conversion into core domain objects.
//!
//! A scenario file is either a full `{"kind": ..., "payload": ..., "tol":
//! ..., "seed": ...}` document or a bare payload whose kind comes from the
//! CLI subcommand. Defaults (`tol = 1e-8`, `seed = 0`, default probes,
//! generator caps) are materialized before the scenario is echoed into the
//! report, so reports are self-describing.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sphlevy_core::{
    levy, sampling, DiscreteOmegaMeasure, LevyTriple, MatrixPoint, OmegaParam,
};

use crate::CliError;

pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_SEED: u64 = 0;

/// Job kinds, one per CLI subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Eval,
    Bochner,
    LkForward,
    CheckPd,
    CheckNd,
    Schoenberg,
    RecoverA,
    RecoverMeasure,
    HaarTest,
    LemmaBounds,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Kind::Eval => "eval",
            Kind::Bochner => "bochner",
            Kind::LkForward => "lk-forward",
            Kind::CheckPd => "check-pd",
            Kind::CheckNd => "check-nd",
            Kind::Schoenberg => "schoenberg",
            Kind::RecoverA => "recover-a",
            Kind::RecoverMeasure => "recover-measure",
            Kind::HaarTest => "haar-test",
            Kind::LemmaBounds => "lemma-bounds",
        };
        f.write_str(name)
    }
}

/// A fully materialized scenario, echoed verbatim into the report.
#[derive(Debug, Clone, Serialize)]
pub struct Scenario {
    pub kind: Kind,
    pub payload: serde_json::Value,
    pub tol: f64,
    pub seed: u64,
}

#[derive(Debug, Deserialize)]
struct ScenarioFile {
    kind: Kind,
    payload: serde_json::Value,
    tol: Option<f64>,
    seed: Option<u64>,
}

/// Assembles a scenario from a file and CLI overrides. The file either
/// carries the kind itself (full form) or is a bare payload.
pub fn load_scenario(
    text: &str,
    subcommand: Option<Kind>,
    tol_flag: Option<f64>,
    seed_flag: Option<u64>,
) -> Result<(Kind, serde_json::Value, f64, u64), CliError> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| CliError::Input(format!("scenario file is not valid JSON: {e}")))?;
    let is_full = value.get("kind").is_some();
    let (kind, payload, file_tol, file_seed) = if is_full {
        let file: ScenarioFile = serde_path_to_error::deserialize(&value)
            .map_err(|e| CliError::Input(format!("scenario: {e}")))?;
        if let Some(sub) = subcommand {
            if sub != file.kind {
                return Err(CliError::Input(format!(
                    "scenario kind `{}` does not match subcommand `{sub}`",
                    file.kind
                )));
            }
        }
        (file.kind, file.payload, file.tol, file.seed)
    } else {
        let Some(kind) = subcommand else {
            return Err(CliError::Input(
                "`run` needs a full scenario file with a `kind` field".into(),
            ));
        };
        (kind, value, None, None)
    };
    let tol = tol_flag.or(file_tol).unwrap_or(DEFAULT_TOL);
    let seed = seed_flag.or(file_seed).unwrap_or(DEFAULT_SEED);
    if !tol.is_finite() || tol < 0.0 {
        return Err(CliError::Input(format!("tol must be a finite nonnegative real, got {tol}")));
    }
    Ok((kind, payload, tol, seed))
}

// ---- payload schemas -------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OmegaJson {
    pub alpha: Vec<f64>,
    pub gamma: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixJson {
    Diag {
        diag: Vec<f64>,
    },
    Dense {
        n: usize,
        re: Vec<Vec<f64>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        im: Option<Vec<Vec<f64>>>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomJson {
    pub alpha: Vec<f64>,
    pub gamma: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleJson {
    pub psi0: f64,
    #[serde(rename = "A")]
    pub a: f64,
    pub nu: Vec<AtomJson>,
}

/// Positive-type kernels the check jobs accept.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelJson {
    Spherical(OmegaJson),
    Bochner(Vec<AtomJson>),
}

/// Candidate negative-type functions. `quadratic` is `psi = a * tr(xi^2)`;
/// a negative coefficient is accepted so that failing checks can be
/// exercised deliberately.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PsiJson {
    Lk(TripleJson),
    Quadratic(QuadraticJson),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadraticJson {
    pub a: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomPointsJson {
    pub count: usize,
    pub dim: usize,
    #[serde(default = "default_hs_cap")]
    pub hs_cap: f64,
}

fn default_hs_cap() -> f64 {
    2.0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointsJson {
    Random { random: RandomPointsJson },
    List(Vec<MatrixJson>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalPayload {
    pub omega: OmegaJson,
    pub xi: MatrixJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BochnerPayload {
    pub measure: Vec<AtomJson>,
    pub xi: MatrixJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LkForwardPayload {
    pub triple: TripleJson,
    pub xi: MatrixJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckPdPayload {
    pub kernel: KernelJson,
    pub points: PointsJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckNdPayload {
    pub psi: PsiJson,
    pub points: PointsJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchoenbergPayload {
    pub psi: PsiJson,
    pub points: PointsJson,
    pub t_grid: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecoverAPayload {
    pub psi: PsiJson,
    #[serde(default = "default_dim")]
    pub n: usize,
    pub s_grid: Vec<f64>,
}

fn default_dim() -> usize {
    1
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecoverMeasurePayload {
    pub psi: PsiJson,
    pub grid: Vec<OmegaJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probes: Option<Vec<MatrixJson>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HaarTestPayload {
    pub omega: OmegaJson,
    pub xi: MatrixJson,
    pub eta: MatrixJson,
    pub n_ladder: Vec<usize>,
    pub n_samples: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LemmaBoundsPayload {
    pub omega: OmegaJson,
    pub xi: MatrixJson,
}

// ---- conversions into core types --------------------------------------

pub fn parse_payload<T: for<'de> Deserialize<'de>>(
    value: &serde_json::Value,
) -> Result<T, CliError> {
    serde_path_to_error::deserialize(value)
        .map_err(|e| CliError::Input(format!("payload: {e}")))
}

pub fn omega_from(json: &OmegaJson) -> Result<OmegaParam, CliError> {
    OmegaParam::new(json.alpha.clone(), json.gamma).map_err(CliError::from)
}

pub fn matrix_from(json: &MatrixJson) -> Result<MatrixPoint, CliError> {
    match json {
        MatrixJson::Diag { diag } => MatrixPoint::from_diag(diag).map_err(CliError::from),
        MatrixJson::Dense { n, re, im } => {
            let n = *n;
            let check_shape = |rows: &Vec<Vec<f64>>, what: &str| -> Result<(), CliError> {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(CliError::Input(format!(
                        "matrix field `{what}` must be {n} rows of {n} entries"
                    )));
                }
                Ok(())
            };
            check_shape(re, "re")?;
            if let Some(im) = im {
                check_shape(im, "im")?;
            }
            let mut data = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    let re_ij = re[i][j];
                    let im_ij = im.as_ref().map_or(0.0, |m| m[i][j]);
                    data.push(Complex64::new(re_ij, im_ij));
                }
            }
            MatrixPoint::new(n, data).map_err(CliError::from)
        }
    }
}

pub fn measure_from(atoms: &[AtomJson]) -> Result<DiscreteOmegaMeasure, CliError> {
    let atoms: Result<Vec<(OmegaParam, f64)>, CliError> = atoms
        .iter()
        .map(|a| Ok((omega_from(&OmegaJson { alpha: a.alpha.clone(), gamma: a.gamma })?, a.weight)))
        .collect();
    DiscreteOmegaMeasure::new(atoms?).map_err(CliError::from)
}

pub fn triple_from(json: &TripleJson) -> Result<LevyTriple, CliError> {
    LevyTriple::new(json.psi0, json.a, measure_from(&json.nu)?).map_err(CliError::from)
}

/// A parsed negative-type candidate, evaluable on matrix points.
pub enum PsiSpec {
    Lk(LevyTriple),
    Quadratic(f64),
}

impl PsiSpec {
    pub fn from_json(json: &PsiJson) -> Result<Self, CliError> {
        match json {
            PsiJson::Lk(triple) => Ok(PsiSpec::Lk(triple_from(triple)?)),
            PsiJson::Quadratic(q) => {
                if !q.a.is_finite() {
                    return Err(CliError::Input(format!(
                        "quadratic coefficient must be finite, got {}",
                        q.a
                    )));
                }
                Ok(PsiSpec::Quadratic(q.a))
            }
        }
    }

    pub fn eval(&self, xi: &MatrixPoint) -> f64 {
        match self {
            PsiSpec::Lk(triple) => levy::lk_forward(triple, xi),
            PsiSpec::Quadratic(a) => a * xi.trace_square(),
        }
    }

    /// The true drift coefficient, known for every CLI psi form.
    pub fn drift(&self) -> f64 {
        match self {
            PsiSpec::Lk(triple) => triple.drift(),
            PsiSpec::Quadratic(a) => *a,
        }
    }
}

/// A parsed positive-type kernel.
pub enum KernelSpec {
    Spherical(OmegaParam),
    Bochner(DiscreteOmegaMeasure),
}

impl KernelSpec {
    pub fn from_json(json: &KernelJson) -> Result<Self, CliError> {
        match json {
            KernelJson::Spherical(omega) => Ok(KernelSpec::Spherical(omega_from(omega)?)),
            KernelJson::Bochner(atoms) => {
                let mu = measure_from(atoms)?;
                let total = mu.total_mass();
                if (total - 1.0).abs() > 1e-12 {
                    return Err(CliError::Input(format!(
                        "bochner mixture weights must sum to 1 (got {total})"
                    )));
                }
                Ok(KernelSpec::Bochner(mu))
            }
        }
    }

    pub fn eval(&self, xi: &MatrixPoint) -> f64 {
        match self {
            KernelSpec::Spherical(omega) => sphlevy_core::spherical::eval(omega, xi),
            KernelSpec::Bochner(mu) => {
                levy::bochner_forward(mu, xi).expect("normalization checked on construction")
            }
        }
    }
}

/// Materializes a point list: explicit matrices, or the seeded generator.
pub fn points_from(json: &PointsJson, seed: u64) -> Result<Vec<MatrixPoint>, CliError> {
    match json {
        PointsJson::List(list) => list.iter().map(matrix_from).collect(),
        PointsJson::Random { random } => {
            if random.count == 0 || random.dim == 0 {
                return Err(CliError::Input(
                    "random points need count >= 1 and dim >= 1".into(),
                ));
            }
            if !random.hs_cap.is_finite() || random.hs_cap <= 0.0 {
                return Err(CliError::Input(format!(
                    "hs_cap must be a positive finite real, got {}",
                    random.hs_cap
                )));
            }
            let mut rng = sampling::seeded_rng(seed);
            Ok((0..random.count)
                .map(|_| sampling::random_dense_point(random.dim, random.hs_cap, &mut rng))
                .collect())
        }
    }
}

/// The default probe family as JSON, used to materialize omitted probes.
pub fn default_probes_json() -> Vec<MatrixJson> {
    levy::default_probes()
        .iter()
        .map(|p| {
            let diag: Vec<f64> = (0..p.dim()).map(|i| p.get(i, i).re).collect();
            MatrixJson::Diag { diag }
        })
        .collect()
}

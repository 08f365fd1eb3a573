use std::collections::BTreeMap;
use std::time::Instant;

use bicount::acceptance::{self, Scale};
use bicount::eliminant::eliminant_pencil;
use bicount::fibercount::{choose_general_line, count_filtration, validate_system, FiberCount};
use bicount::oracle::{count_via_line_pencil, generate, Family, GeneratorSpec};
use bicount::poly::{BivarPoly, PolySystem};
use bicount::puiseux::{jacobian_bound_check, zeuthen_count, ZeuthenConfig};
use serde::Serialize;
use serde_json::json;

use crate::error::CliError;
use crate::file::{render, SystemFile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Filtration,
    Eliminant,
    Oracle,
    All,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Filtration => "filtration",
            Method::Eliminant => "eliminant",
            Method::Oracle => "oracle",
            Method::All => "all",
        }
    }

    fn runs(self, other: Method) -> bool {
        self == Method::All || self == other
    }
}

/// Phase timings in milliseconds, collected only on request.
#[derive(Debug, Default)]
pub struct Timer {
    enabled: bool,
    phases: BTreeMap<&'static str, f64>,
}

impl Timer {
    pub fn new(enabled: bool) -> Self {
        Timer { enabled, phases: BTreeMap::new() }
    }

    fn time<T>(&mut self, phase: &'static str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.enabled {
            self.phases.insert(phase, start.elapsed().as_secs_f64() * 1e3);
        }
        out
    }

    fn report(self) -> Option<BTreeMap<&'static str, f64>> {
        self.enabled.then_some(self.phases)
    }
}

#[derive(Serialize)]
pub struct Report<T: Serialize> {
    pub command: &'static str,
    pub status: &'static str,
    #[serde(flatten)]
    pub body: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<&'static str, f64>>,
}

#[derive(Serialize)]
pub struct Input {
    source: String,
    n1: u32,
    n2: u32,
    #[serde(rename = "F1")]
    f1: String,
    #[serde(rename = "F2")]
    f2: String,
    #[serde(rename = "H")]
    h: Option<String>,
}

impl Input {
    pub fn new(source: &str, file: &SystemFile) -> Self {
        let s = &file.system;
        Input {
            source: source.to_string(),
            n1: s.n1,
            n2: s.n2,
            f1: s.f1.to_string(),
            f2: s.f2.to_string(),
            h: file.line.as_ref().map(ToString::to_string),
        }
    }
}

fn resolve_line(s: &PolySystem, given: Option<&BivarPoly>) -> Result<(BivarPoly, &'static str), CliError> {
    Ok(match given {
        Some(h) => (h.clone(), "file"),
        None => (choose_general_line(s)?, "chosen"),
    })
}

#[derive(Serialize, Default, PartialEq, Eq)]
struct Counts {
    #[serde(skip_serializing_if = "Option::is_none")]
    filtration: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eliminant: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<usize>,
}

impl Counts {
    fn values(&self) -> Vec<usize> {
        [self.filtration, self.eliminant, self.oracle].into_iter().flatten().collect()
    }
}

#[derive(Serialize)]
pub struct CountBody {
    input: Input,
    validity: &'static str,
    method: &'static str,
    line: String,
    line_source: &'static str,
    bezout: u32,
    counts: Counts,
    count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    dims: Option<Vec<usize>>,
}

pub fn count(
    source: &str,
    file: &SystemFile,
    method: Method,
    timer: &mut Timer,
) -> Result<CountBody, CliError> {
    let s = &file.system;
    validate_system(s)?;
    let (line, line_source) = resolve_line(s, file.line.as_ref())?;
    let mut counts = Counts::default();
    let mut dims = None;
    if method.runs(Method::Filtration) {
        let fc = timer.time("filtration", || count_filtration(s, Some(&line)))?;
        counts.filtration = Some(fc.count);
        dims = Some(fc.filtration.dims);
    }
    if method.runs(Method::Eliminant) {
        let pencil = timer.time("eliminant", || eliminant_pencil(s, &line))?;
        counts.eliminant = Some(pencil.degree());
    }
    if method.runs(Method::Oracle) {
        counts.oracle = Some(timer.time("oracle", || count_via_line_pencil(s, &line))?);
    }
    let values = counts.values();
    if values.windows(2).any(|w| w[0] != w[1]) {
        let diagnostics = json!({
            "input": Input::new(source, file),
            "line": line.to_string(),
            "counts": counts,
            "dims": dims,
        });
        return Err(CliError::Disagreement {
            message: format!("{s} with H' = {line}: counts {values:?}"),
            diagnostics,
        });
    }
    Ok(CountBody {
        input: Input::new(source, file),
        validity: "valid",
        method: method.name(),
        line: line.to_string(),
        line_source,
        bezout: s.bezout_number(),
        count: values[0],
        counts,
        dims,
    })
}

#[derive(Serialize)]
struct Concavity {
    i: usize,
    twice_dim: usize,
    neighbor_sum: usize,
    ok: bool,
}

#[derive(Serialize)]
pub struct TraceBody {
    input: Input,
    validity: &'static str,
    line: String,
    line_source: &'static str,
    bezout: u32,
    k_dim: usize,
    prefix_dim: usize,
    dims: Vec<usize>,
    stabilized_at: usize,
    stabilization_limit: usize,
    monotone: bool,
    concave: bool,
    concavity: Vec<Concavity>,
    count: usize,
}

pub fn trace(source: &str, file: &SystemFile, timer: &mut Timer) -> Result<TraceBody, CliError> {
    let s = &file.system;
    validate_system(s)?;
    let (line, line_source) = resolve_line(s, file.line.as_ref())?;
    let FiberCount { count, filtration, .. } =
        timer.time("filtration", || count_filtration(s, Some(&line)))?;
    let dims = &filtration.dims;
    let concavity = (1..dims.len().saturating_sub(1))
        .map(|i| {
            let (twice_dim, neighbor_sum) = (2 * dims[i], dims[i - 1] + dims[i + 1]);
            Concavity { i, twice_dim, neighbor_sum, ok: twice_dim >= neighbor_sum }
        })
        .collect();
    Ok(TraceBody {
        input: Input::new(source, file),
        validity: "valid",
        line: line.to_string(),
        line_source,
        bezout: s.bezout_number(),
        k_dim: filtration.k.dim(),
        prefix_dim: filtration.prefix_dim,
        monotone: filtration.is_monotone()?,
        concave: filtration.is_concave(),
        concavity,
        stabilized_at: filtration.stabilized_at,
        stabilization_limit: filtration.prefix_dim + 1,
        dims: filtration.dims.clone(),
        count,
    })
}

#[derive(Serialize)]
struct BranchOut {
    den: usize,
    lead_exp: Option<String>,
    degree: String,
}

#[derive(Serialize)]
pub struct ZeuthenBody {
    input: Input,
    validity: &'static str,
    precision: f64,
    radius_floor: f64,
    substitution_lambda: String,
    radius: f64,
    escalations: u32,
    branches: Vec<BranchOut>,
    count: usize,
}

pub fn zeuthen(
    source: &str,
    file: &SystemFile,
    config: &ZeuthenConfig,
    timer: &mut Timer,
) -> Result<ZeuthenBody, CliError> {
    let z = timer.time("zeuthen", || zeuthen_count(&file.system, config))?;
    Ok(ZeuthenBody {
        input: Input::new(source, file),
        validity: "valid",
        precision: config.tolerance,
        radius_floor: config.radius_floor,
        substitution_lambda: z.substitution.lambda.to_string(),
        radius: z.radius,
        escalations: z.escalations,
        branches: z
            .branches
            .into_iter()
            .map(|b| BranchOut {
                den: b.den,
                lead_exp: b.lead_exp.map(|e| e.to_string()),
                degree: b.degree.to_string(),
            })
            .collect(),
        count: z.count,
    })
}

#[derive(Serialize)]
pub struct BoundBody {
    input: Input,
    validity: String,
    seed: u64,
    trials: usize,
    k: i64,
    jacobian_zero: bool,
    bound: Option<usize>,
    fiber_count: Option<usize>,
    degree_estimate: Option<usize>,
    satisfied: bool,
}

pub fn bound_check(
    source: &str,
    file: &SystemFile,
    trials: usize,
    seed: u64,
    timer: &mut Timer,
) -> Result<BoundBody, CliError> {
    let s = &file.system;
    let validity = match validate_system(s) {
        Ok(()) => "valid".to_string(),
        Err(e) if e.is_invalid_system() => format!("invalid: {e}"),
        Err(e) => return Err(e.into()),
    };
    let r = timer.time("bound_check", || jacobian_bound_check(s, trials, seed))?;
    Ok(BoundBody {
        input: Input::new(source, file),
        validity,
        seed,
        trials,
        k: r.k,
        jacobian_zero: r.jacobian_zero,
        bound: r.bound,
        fiber_count: r.fiber_count,
        degree_estimate: r.degree_estimate,
        satisfied: r.satisfied,
    })
}

impl BoundBody {
    pub fn satisfied(&self) -> bool {
        self.satisfied
    }
}

#[derive(Serialize)]
struct SpecOut {
    family: &'static str,
    n1: u32,
    n2: u32,
    bound: i64,
    seed: u64,
}

#[derive(Serialize)]
struct SystemOut {
    n1: u32,
    n2: u32,
    #[serde(rename = "F1")]
    f1: String,
    #[serde(rename = "F2")]
    f2: String,
}

#[derive(Serialize)]
struct AnnotationOut {
    points: Option<Vec<[String; 2]>>,
    degree_of_mapping: Option<usize>,
    jacobian_degree_at_most: Option<i64>,
    attempts: usize,
}

#[derive(Serialize)]
pub struct GenBody {
    spec: SpecOut,
    system: SystemOut,
    annotation: AnnotationOut,
    file: String,
}

pub fn gen(
    family: Family,
    n1: u32,
    n2: u32,
    bound: i64,
    seed: u64,
    timer: &mut Timer,
) -> Result<GenBody, CliError> {
    let spec = GeneratorSpec { family, n1, n2, bound, seed };
    let g = timer.time("generate", || generate(&spec))?;
    let s = &g.system;
    let a = g.annotation;
    Ok(GenBody {
        spec: SpecOut { family: family.name(), n1, n2, bound, seed },
        system: SystemOut { n1: s.n1, n2: s.n2, f1: s.f1.to_string(), f2: s.f2.to_string() },
        annotation: AnnotationOut {
            points: a.points.map(|ps| ps.into_iter().map(|(x, y)| [x.to_string(), y.to_string()]).collect()),
            degree_of_mapping: a.degree_of_mapping,
            jacobian_degree_at_most: a.jacobian_degree_at_most,
            attempts: a.attempts,
        },
        file: render(s, None),
    })
}

impl GenBody {
    pub fn file(&self) -> &str {
        &self.file
    }
}

#[derive(Serialize)]
struct CriterionOut {
    id: u8,
    name: &'static str,
    passed: bool,
    detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<f64>,
}

#[derive(Serialize)]
pub struct SelftestBody {
    scale: String,
    seed: u64,
    passed: bool,
    criteria: Vec<CriterionOut>,
}

pub fn selftest(scale: Scale, seed: u64, timings: bool) -> SelftestBody {
    let criteria: Vec<CriterionOut> = (1..=9)
        .map(|id| {
            let r = acceptance::run(id, scale, seed);
            log::info!("{r}");
            CriterionOut {
                id: r.id,
                name: r.name,
                passed: r.passed,
                detail: r.detail,
                elapsed_ms: timings.then_some(r.elapsed.as_secs_f64() * 1e3),
            }
        })
        .collect();
    SelftestBody { scale: scale.to_string(), seed, passed: criteria.iter().all(|c| c.passed), criteria }
}

impl SelftestBody {
    pub fn passed(&self) -> bool {
        self.passed
    }
}

pub fn finish<T: Serialize>(command: &'static str, body: T, timer: Timer) -> Report<T> {
    Report { command, status: "ok", body, timings_ms: timer.report() }
}

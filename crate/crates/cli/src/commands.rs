use std::f64::consts::PI;
use std::fmt::Display;

use clap::{Args, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use indexkit::hodge::{
    betti_numbers, build_complex, circulation_periods, collapsed_index, double_surface, loop_circulation,
    sample_one_form, BoundaryCondition, HodgeError, Spectrum,
};
use indexkit::lattice::{count_jackpots, parse_polygon_csv, pick_count, CountMode, JackpotInstance, LatticeError};
use indexkit::localization::{
    cp1_class, cp1_index as cp1_value, curvature_quadrature, fixed_point_data, localized_index, parse_fiber,
    LocalizationError, WeightedModel, VARIABLE_NAMES,
};
use indexkit::mesh::{
    defect_sum_check, euler_characteristic, holed_rectangle, icosahedron, icosphere, octahedron, read_off,
    tetrahedron, two_disjoint_triangles, MeshError, SimplicialSurface,
};
use indexkit::resolution::{parse_germ, report, resolve as run_resolution, Ordering, ResolutionError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Domain,
    Consistency,
    Resource,
}

impl ErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorKind::Usage => "usage",
            ErrorKind::Domain => "domain",
            ErrorKind::Consistency => "consistency",
            ErrorKind::Resource => "resource",
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            ErrorKind::Usage => 1,
            ErrorKind::Domain | ErrorKind::Consistency => 2,
            ErrorKind::Resource => 3,
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
    pub inputs: Value,
}

impl CliError {
    fn new(kind: ErrorKind, message: impl Display) -> Self {
        Self { kind, message: message.to_string(), inputs: Value::Null }
    }
}

impl From<MeshError> for CliError {
    fn from(e: MeshError) -> Self {
        Self::new(ErrorKind::Domain, e)
    }
}

impl From<HodgeError> for CliError {
    fn from(e: HodgeError) -> Self {
        let kind = match e {
            HodgeError::TooLarge { .. } => ErrorKind::Resource,
            HodgeError::SingularPeriods { .. } | HodgeError::HarmonicDimension { .. } | HodgeError::Eigen(_) => {
                ErrorKind::Consistency
            }
            _ => ErrorKind::Domain,
        };
        Self::new(kind, e)
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        let kind = match e {
            LatticeError::ResourceGuard { .. } => ErrorKind::Resource,
            LatticeError::PickMismatch { .. } => ErrorKind::Consistency,
            _ => ErrorKind::Domain,
        };
        Self::new(kind, e)
    }
}

impl From<LocalizationError> for CliError {
    fn from(e: LocalizationError) -> Self {
        let kind = match e {
            LocalizationError::Inconsistent(_) => ErrorKind::Consistency,
            _ => ErrorKind::Domain,
        };
        Self::new(kind, e)
    }
}

impl From<ResolutionError> for CliError {
    fn from(e: ResolutionError) -> Self {
        let kind = match e {
            ResolutionError::Consistency { .. } | ResolutionError::NoTermination(_) => ErrorKind::Consistency,
            _ => ErrorKind::Domain,
        };
        Self::new(kind, e)
    }
}

type Outcome = Result<(Value, Value, String), CliError>;

/// Runs `body` and attaches `inputs` to both the success and error paths.
fn with_inputs(inputs: Value, body: impl FnOnce() -> Result<(Value, String), CliError>) -> Outcome {
    match body() {
        Ok((result, summary)) => Ok((inputs, result, summary)),
        Err(mut e) => {
            e.inputs = inputs;
            Err(e)
        }
    }
}

#[derive(Args, Debug)]
pub struct MeshArgs {
    /// OFF file, or a built-in: builtin:tetrahedron, builtin:octahedron,
    /// builtin:icosahedron, builtin:icosphere:<levels>, builtin:two-triangles,
    /// builtin:holed:<g>[:<res>], builtin:genus:<g>[:<res>]
    #[arg(long, value_name = "PATH|BUILTIN")]
    pub mesh: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ConditionArg {
    /// none for closed meshes, absolute otherwise
    Auto,
    None,
    Absolute,
    Relative,
}

#[derive(Args, Debug)]
pub struct ComplexArgs {
    #[command(flatten)]
    pub mesh: MeshArgs,
    /// Boundary condition for the cochain complex
    #[arg(long, value_enum, default_value = "auto", value_name = "COND")]
    pub condition: ConditionArg,
}

#[derive(Args, Debug)]
pub struct HeatArgs {
    #[command(flatten)]
    pub complex: ComplexArgs,
    /// Comma-separated heat times
    #[arg(long, value_name = "REAL,...", default_value = "0.05,0.5,5,50", value_delimiter = ',')]
    pub t: Vec<f64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Brute,
    Formula,
    Both,
}

#[derive(Args, Debug)]
pub struct JackpotArgs {
    /// Scale parameter; counts (q, n, c) with 5q + n + c = 5k
    #[arg(long, value_name = "INT")]
    pub k: u64,
    /// Counting method; `both` asserts agreement
    #[arg(long, value_enum, default_value = "both", value_name = "MODE")]
    pub mode: ModeArg,
}

#[derive(Args, Debug)]
pub struct PickArgs {
    /// CSV file of counterclockwise "x,y" vertices
    #[arg(long, value_name = "PATH")]
    pub polygon: String,
}

#[derive(Args, Debug)]
pub struct LocalizeArgs {
    /// Ambient weights (two or three positive integers)
    #[arg(long, value_name = "INT,...", default_value = "5,1,1", value_delimiter = ',')]
    pub weights: Vec<u32>,
    /// Fiber weight, linear in k
    #[arg(long, value_name = "EXPR", default_value = "5k", allow_hyphen_values = true)]
    pub fiber: String,
}

#[derive(Args, Debug)]
pub struct Cp1Args {
    /// Evaluate at this degree (omit for the symbolic answer only)
    #[arg(long, value_name = "INT")]
    pub k: Option<u64>,
}

#[derive(Args, Debug)]
pub struct CurvatureArgs {
    /// Radius of the circle |z| = R
    #[arg(long, value_name = "REAL", default_value_t = 1000.0, allow_negative_numbers = true)]
    pub radius: f64,
    /// Trapezoid steps (at least 16)
    #[arg(long, value_name = "INT", default_value_t = 100_000)]
    pub steps: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OrderingArg {
    /// long arm, branch node, shorter arms
    Canonical,
    /// order in which the curves were created
    Creation,
}

#[derive(Args, Debug)]
pub struct ResolveArgs {
    /// Polynomial in two variables, e.g. "y^3+z^5"
    #[arg(long, value_name = "POLY", allow_hyphen_values = true)]
    pub germ: String,
    /// Include per-blow-up chart polynomials
    #[arg(long)]
    pub trace: bool,
    /// Row order of the intersection matrix
    #[arg(long, value_enum, default_value = "canonical", value_name = "ORDER")]
    pub ordering: OrderingArg,
}

fn builtin_param(parts: &[&str], i: usize, default: usize, name: &str) -> Result<usize, CliError> {
    match parts.get(i) {
        None => Ok(default),
        Some(s) => s
            .parse()
            .map_err(|_| CliError::new(ErrorKind::Usage, format!("bad {name} {s:?} in built-in mesh"))),
    }
}

/// Largest parameters accepted for built-in meshes.
const MAX_ICOSPHERE_LEVEL: usize = 5;
const MAX_HOLES: usize = 8;
const MAX_RESOLUTION: usize = 8;

fn load_mesh(source: &str) -> Result<SimplicialSurface, CliError> {
    let Some(rest) = source.strip_prefix("builtin:") else {
        return Ok(read_off(source)?);
    };
    let parts: Vec<&str> = rest.split(':').collect();
    let too_big = |what: &str, max: usize| CliError::new(ErrorKind::Resource, format!("{what} is capped at {max}"));
    match parts[0] {
        "tetrahedron" => Ok(tetrahedron()),
        "octahedron" => Ok(octahedron()),
        "icosahedron" => Ok(icosahedron()),
        "two-triangles" => Ok(two_disjoint_triangles()),
        "icosphere" => {
            let levels = builtin_param(&parts, 1, 0, "level")?;
            if levels > MAX_ICOSPHERE_LEVEL {
                return Err(too_big("icosphere level", MAX_ICOSPHERE_LEVEL));
            }
            Ok(icosphere(levels as u32))
        }
        "holed" | "genus" => {
            let g = builtin_param(&parts, 1, 1, "hole count")?;
            let res = builtin_param(&parts, 2, 1, "resolution")?;
            if g > MAX_HOLES {
                return Err(too_big("hole count", MAX_HOLES));
            }
            if res == 0 || res > MAX_RESOLUTION {
                return Err(CliError::new(ErrorKind::Usage, format!("resolution must be in 1..={MAX_RESOLUTION}")));
            }
            let base = holed_rectangle(g, res);
            if parts[0] == "holed" {
                Ok(base)
            } else {
                Ok(double_surface(&base)?.surface)
            }
        }
        other => Err(CliError::new(ErrorKind::Usage, format!("unknown built-in mesh {other:?}"))),
    }
}

fn counts(s: &SimplicialSurface) -> Value {
    json!({
        "vertices": s.num_vertices(),
        "edges": s.num_edges(),
        "faces": s.num_faces(),
        "chi": euler_characteristic(s),
    })
}

fn condition_for(arg: ConditionArg, s: &SimplicialSurface) -> BoundaryCondition {
    match arg {
        ConditionArg::Auto if s.is_closed() => BoundaryCondition::None,
        ConditionArg::Auto | ConditionArg::Absolute => BoundaryCondition::Absolute,
        ConditionArg::None => BoundaryCondition::None,
        ConditionArg::Relative => BoundaryCondition::Relative,
    }
}

fn condition_name(c: BoundaryCondition) -> &'static str {
    match c {
        BoundaryCondition::None => "none",
        BoundaryCondition::Absolute => "absolute",
        BoundaryCondition::Relative => "relative",
    }
}

pub fn gauss_bonnet(a: &MeshArgs) -> Outcome {
    with_inputs(json!({"mesh": a.mesh}), || {
        let s = load_mesh(&a.mesh)?;
        let d = defect_sum_check(&s)?;
        let mut result = counts(&s);
        result["defect_sum"] = json!(d.defect_sum);
        result["two_pi_chi"] = json!(d.two_pi_chi);
        result["residual"] = json!(d.residual);
        let summary = format!("defect sum {:.12} vs 2πχ {:.12}", d.defect_sum, d.two_pi_chi);
        Ok((result, summary))
    })
}

pub fn betti(a: &ComplexArgs) -> Outcome {
    with_inputs(json!({"mesh": a.mesh.mesh, "condition": format!("{:?}", a.condition).to_lowercase()}), || {
        let s = load_mesh(&a.mesh.mesh)?;
        let cond = condition_for(a.condition, &s);
        let complex = build_complex(&s, cond)?;
        let b = betti_numbers(&complex);
        let ci = collapsed_index(&complex);
        let result = json!({
            "condition": condition_name(cond),
            "betti": b,
            "index": ci.index,
            "kernel": ci.kernel,
            "cokernel": ci.cokernel,
            "chi": complex.euler_characteristic(),
        });
        Ok((result, format!("betti {b:?}, index {}", ci.index)))
    })
}

pub fn heat_index(a: &HeatArgs) -> Outcome {
    let inputs = json!({
        "mesh": a.complex.mesh.mesh,
        "condition": format!("{:?}", a.complex.condition).to_lowercase(),
        "t": a.t,
    });
    with_inputs(inputs, || {
        let s = load_mesh(&a.complex.mesh.mesh)?;
        let cond = condition_for(a.complex.condition, &s);
        let complex = build_complex(&s, cond)?;
        let b = betti_numbers(&complex);
        let index = b[0] as i64 - b[1] as i64 + b[2] as i64;
        let spectrum = Spectrum::compute(&complex)?;
        let mut traces = Vec::new();
        for &t in &a.t {
            traces.push(json!({"t": t, "value": spectrum.supertrace(t)?}));
        }
        let result = json!({
            "condition": condition_name(cond),
            "betti": b,
            "index": index,
            "supertrace": traces,
        });
        Ok((result, format!("index {index}, {} supertraces", a.t.len())))
    })
}

pub fn double(a: &MeshArgs) -> Outcome {
    with_inputs(json!({"mesh": a.mesh}), || {
        let base = load_mesh(&a.mesh)?;
        let d = double_surface(&base)?;
        let complex = build_complex(&d.surface, BoundaryCondition::None)?;
        let b = betti_numbers(&complex);
        let ci = collapsed_index(&complex);
        let fixed = d.involution.iter().enumerate().filter(|&(i, &j)| i == j).count();
        let result = json!({
            "base": counts(&base),
            "double": counts(&d.surface),
            "fixed_vertices": fixed,
            "betti": b,
            "index": ci.index,
        });
        Ok((result, format!("χ {} -> {}", euler_characteristic(&base), euler_characteristic(&d.surface))))
    })
}

fn centroid(s: &SimplicialSurface, cycle: &[usize]) -> (f64, f64) {
    let n = cycle.len() as f64;
    let (x, y) = cycle.iter().fold((0.0, 0.0), |(x, y), &v| (x + s.vertices()[v][0], y + s.vertices()[v][1]));
    (x / n, y / n)
}

pub fn periods(a: &MeshArgs) -> Outcome {
    with_inputs(json!({"mesh": a.mesh}), || {
        let s = load_mesh(&a.mesh)?;
        let p = circulation_periods(&s)?;
        let centres: Vec<(f64, f64)> = p.holes.iter().map(|h| centroid(&s, h)).collect();
        // windings[i][j]: the angular field around hole j, circulated around hole i
        let windings: Vec<Vec<f64>> = p
            .holes
            .iter()
            .map(|hole| {
                centres
                    .iter()
                    .map(|&(cx, cy)| {
                        let form = sample_one_form(&s, |x, y| {
                            let (dx, dy) = (x - cx, y - cy);
                            let r2 = dx * dx + dy * dy;
                            (-dy / (2.0 * PI * r2), dx / (2.0 * PI * r2))
                        });
                        loop_circulation(&s, &form, hole)
                    })
                    .collect()
            })
            .collect();
        let exact: Vec<Vec<String>> = p.exact.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        let result = json!({
            "holes": p.holes.len(),
            "hole_centres": centres.iter().map(|&(x, y)| [x, y]).collect::<Vec<_>>(),
            "matrix": exact,
            "values": p.values,
            "windings": windings,
        });
        Ok((result, format!("{} holes, period matrix invertible", p.holes.len())))
    })
}

pub fn jackpot(a: &JackpotArgs) -> Outcome {
    let mode = format!("{:?}", a.mode).to_lowercase();
    with_inputs(json!({"k": a.k, "mode": mode}), || {
        let inst = JackpotInstance::new(a.k);
        let mut result = Map::new();
        result.insert("k".into(), json!(a.k));
        let formula = match a.mode {
            ModeArg::Formula | ModeArg::Both => Some(count_jackpots(inst, CountMode::Formula)?),
            ModeArg::Brute => None,
        };
        let brute = match a.mode {
            ModeArg::Brute | ModeArg::Both => Some(count_jackpots(inst, CountMode::Brute)?),
            ModeArg::Formula => None,
        };
        if let Some(f) = &formula {
            result.insert("formula".into(), json!(f.to_string()));
        }
        if let Some(b) = &brute {
            result.insert("brute".into(), json!(b.to_string()));
        }
        if let (Some(f), Some(b)) = (&formula, &brute) {
            result.insert("match".into(), json!(f == b));
            if f != b {
                return Err(CliError::new(ErrorKind::Consistency, format!("formula {f} != brute {b}")));
            }
        }
        let value = formula.or(brute).expect("some mode ran");
        Ok((Value::Object(result), format!("{value} jackpots")))
    })
}

pub fn pick(a: &PickArgs) -> Outcome {
    with_inputs(json!({"polygon": a.polygon}), || {
        let text = std::fs::read_to_string(&a.polygon)
            .map_err(|e| CliError::new(ErrorKind::Domain, format!("{}: {e}", a.polygon)))?;
        let poly = parse_polygon_csv(&text)?;
        let r = pick_count(&poly)?;
        let summary = format!("A = {}, B = {}, I = {}, total {}", r.area, r.boundary, r.interior, r.total);
        let result = serde_json::to_value(&r).expect("serialisable");
        Ok((result, summary))
    })
}

pub fn localize(a: &LocalizeArgs) -> Outcome {
    with_inputs(json!({"weights": a.weights, "fiber": a.fiber}), || {
        let model = WeightedModel::new(a.weights.clone(), parse_fiber(&a.fiber)?)?;
        let r = localized_index(&model)?;
        let deg = r.polynomial.total_degree().unwrap_or(0).max(model.dimension() as u32);
        let mut coefficients = Map::new();
        for d in (0..=deg).rev() {
            coefficients.insert(format!("k^{d}"), json!(r.polynomial.coeff(&[d]).to_string()));
        }
        let graded: Vec<Value> = r
            .graded
            .iter()
            .enumerate()
            .map(|(i, p)| json!({"chern_degree": 2 * i, "sum": p.display_with(&["k"], "*")}))
            .collect();
        let show = |p: &indexkit::localization::WeightPoly| p.display_with(&VARIABLE_NAMES, "*");
        let mut per_point = Map::new();
        for (d, c) in fixed_point_data(&model).iter().zip(&r.per_point) {
            per_point.insert(
                d.label.clone(),
                json!({
                    "tangent_weights": d.tangent_weights.iter().map(show).collect::<Vec<_>>(),
                    "fiber_weight": show(&d.fiber_weight),
                    "orbifold_order": d.orbifold_order,
                    "term": c.term.to_string(),
                }),
            );
        }
        let poly = r.polynomial.display_with(&["k"], "*");
        let result = json!({
            "polynomial": poly,
            "coefficients": coefficients,
            "graded": graded,
            "per_point": per_point,
        });
        Ok((result, format!("index polynomial {poly}")))
    })
}

pub fn cp1_index(a: &Cp1Args) -> Outcome {
    with_inputs(json!({"k": a.k}), || {
        let class = cp1_class();
        let index = class.integrate().display_with(&["k"], "*");
        let mut result = json!({
            "class": {"c0": class.c0.display_with(&["k"], "*"), "c1": class.c1.display_with(&["k"], "*")},
            "index": index,
        });
        let mut summary = format!("index {index}");
        if let Some(k) = a.k {
            let v = cp1_value(&BigInt::from(k));
            result["value"] = json!(v.to_string());
            summary = format!("{summary} = {v} at k = {k}");
        }
        Ok((result, summary))
    })
}

pub fn curvature(a: &CurvatureArgs) -> Outcome {
    with_inputs(json!({"radius": a.radius, "steps": a.steps}), || {
        let value = curvature_quadrature(a.radius, a.steps)?;
        let r2 = a.radius * a.radius;
        let closed = r2 / (r2 + 1.0);
        let result = json!({
            "value": value,
            "closed_form": closed,
            "error": (value - closed).abs(),
        });
        Ok((result, format!("{value:.12}")))
    })
}

pub fn resolve(a: &ResolveArgs) -> Outcome {
    let ordering_name = format!("{:?}", a.ordering).to_lowercase();
    with_inputs(json!({"germ": a.germ, "trace": a.trace, "ordering": ordering_name}), || {
        let germ = parse_germ(&a.germ)?;
        let res = run_resolution(&germ)?;
        let ordering = match a.ordering {
            OrderingArg::Canonical => Ordering::Canonical,
            OrderingArg::Creation => Ordering::Creation,
        };
        let r = report(&res, &ordering)?;
        let mut result = json!({
            "cycles": r.cycles,
            "edges": r.edges,
            "cover_applied": r.cover_applied,
            "matrix": r.matrix,
            "determinant": r.determinant,
            "signature": r.signature,
            "negative_definite": r.negative_definite,
            "divisible_by_16": r.rochlin.map(|x| x.divisible_by_16),
            "rochlin_contradiction": r.rochlin.map(|x| x.contradiction),
        });
        if let Some(e) = &r.cover_error {
            result["cover_error"] = json!(e);
        }
        if a.trace {
            result["trace"] = serde_json::to_value(&r.trace).expect("serialisable");
        }
        Ok((result, format!("{} blow-ups, signature {}", res.trace.len(), r.signature)))
    })
}

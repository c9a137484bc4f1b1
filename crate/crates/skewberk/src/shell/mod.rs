//! Map spec files, point literals, the command dispatcher behind the CLI and
//! DOT output for finite subtrees.

mod parse;

use std::path::PathBuf;

use clap::{Parser as ClapParser, Subcommand};
use num_traits::Zero;
use serde_json::{json, Map, Value};

pub use parse::{parse_direction, parse_expr, parse_point, parse_series, split_top_level};

use crate::berktree::{hyp_dist, BerkPoint, Tri};
use crate::dynclass::{
    self, classify_fixed_hyperbolic, classify_fixed_type_i, classify_repelling_type_i, detect_cycle, Attractor,
    CycleSearch, HypClass, NumClass, TypeIClass, TypeIVerdict, Verdict,
};
use crate::error::{Error, Result};
use crate::ratcalc::{gauss_norm, rf_eval, Disk, RationalFunc};
use crate::skewmap::SkewProduct;
use crate::valcore::{default_order, Classical, Rat, ValExp};

/// A parsed spec file: the sources of both components plus options.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapSpec {
    pub phi1_src: String,
    pub phi2_src: String,
    /// truncation order of every series computation
    pub order: Rat,
    /// how many periods a direction may take to return
    pub search_bound: usize,
    /// allow irrational (Type III) radii in point literals
    pub theta: bool,
}

impl MapSpec {
    pub fn render(&self) -> String {
        format!(
            "phi1 = {};\nphi2 = {};\norder = {};\nbound = {};\ntheta = {};\n",
            self.phi1_src, self.phi2_src, self.order, self.search_bound, self.theta
        )
    }
}

/// Renders a map in spec syntax with default options.
pub fn render_map(phi: &SkewProduct) -> String {
    MapSpec {
        phi1_src: phi.phi1().to_string(),
        phi2_src: phi.phi2().to_string(),
        order: phi.prec().clone(),
        search_bound: dynclass::DIRECTION_SEARCH_BOUND,
        theta: true,
    }
    .render()
}

pub fn parse_spec(text: &str) -> Result<(MapSpec, SkewProduct)> {
    let opts = parse::Parser::new(text, default_order())?.spec()?.opts;
    let mut order = default_order();
    let mut search_bound = dynclass::DIRECTION_SEARCH_BOUND;
    let mut theta = true;
    let p = parse::Parser::new(text, default_order())?;
    for (name, val, pos) in &opts {
        let bad = || p.syntax(*pos, format!("bad value `{val}` for `{name}`"));
        match name.as_str() {
            "order" => {
                let v: ValExp = val.parse().map_err(|_| bad())?;
                order = v.as_rat().filter(|r| *r > &Rat::zero()).cloned().ok_or_else(bad)?;
            }
            "bound" => search_bound = val.parse().ok().filter(|b| *b > 0).ok_or_else(bad)?,
            "theta" => {
                theta = match val.as_str() {
                    "true" | "on" | "1" => true,
                    "false" | "off" | "0" => false,
                    _ => return Err(bad()),
                }
            }
            _ => return Err(p.syntax(*pos, format!("unknown option `{name}`"))),
        }
    }
    let mut p = parse::Parser::new(text, order.clone())?;
    let parts = p.spec()?;
    let ((e1, phi1_src), (e2, phi2_src)) = (parts.phi1, parts.phi2);
    if !e1.is_y_free() {
        return Err(Error::InvalidPhi1("phi1 must not involve y".into()));
    }
    let phi1 = parse::y_free_series(&e1, &order)?;
    let phi = SkewProduct::with_order(phi1, e2, order.clone())?;
    let spec = MapSpec { phi1_src, phi2_src, order, search_bound, theta };
    Ok((spec, phi))
}

/// DOT text for the finite subtree spanned by `points`: the join closure,
/// with covering edges labelled by hyperbolic length.
pub fn emit_dot(points: &[BerkPoint]) -> Result<String> {
    if points.is_empty() {
        return Err(Error::Invalid("emit_dot needs at least one point".into()));
    }
    let mut nodes: Vec<BerkPoint> = Vec::new();
    let push = |nodes: &mut Vec<BerkPoint>, p: BerkPoint| -> Result<bool> {
        for n in nodes.iter() {
            match n.same_point(&p)? {
                Tri::Equal => return Ok(false),
                Tri::EqualSoFar => return Err(Error::precision("Type IV points agree on their known prefix")),
                Tri::Distinct => {}
            }
        }
        nodes.push(p);
        Ok(true)
    };
    for p in points {
        push(&mut nodes, p.clone())?;
    }
    loop {
        let mut grew = false;
        let snapshot = nodes.clone();
        for i in 0..snapshot.len() {
            for j in i + 1..snapshot.len() {
                grew |= push(&mut nodes, snapshot[i].join(&snapshot[j])?)?;
            }
        }
        if !grew {
            break;
        }
    }
    let mut labelled: Vec<(String, BerkPoint)> = nodes.into_iter().map(|p| (p.to_string(), p)).collect();
    labelled.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out = String::from("graph hull {\n");
    for (i, (name, _)) in labelled.iter().enumerate() {
        out.push_str(&format!("  n{i} [label=\"{name}\"];\n"));
    }
    for (i, (_, p)) in labelled.iter().enumerate() {
        // parent: the lowest node strictly above p
        let mut parent: Option<usize> = None;
        for (j, (_, q)) in labelled.iter().enumerate() {
            if i == j || !p.leq(q)? {
                continue;
            }
            if parent.map_or(Ok(true), |k| q.leq(&labelled[k].1))? {
                parent = Some(j);
            }
        }
        if let Some(j) = parent {
            let len = match hyp_dist(p, &labelled[j].1) {
                Ok(d) => d.to_string(),
                Err(Error::TypeIUnsupported) => "inf".into(),
                Err(e) => return Err(e),
            };
            out.push_str(&format!("  n{i} -- n{j} [label=\"{len}\"];\n"));
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[derive(ClapParser, Debug)]
#[command(name = "skewberk", version, about = "Skew products on the Berkovich line over Puiseux series")]
pub struct Cli {
    /// spec file with `phi1 = ..; phi2 = ..;`
    #[arg(long, global = true)]
    pub map: Option<PathBuf>,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// image of a point
    Eval {
        #[arg(long)]
        point: String,
    },
    Orbit {
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 8)]
        steps: usize,
    },
    Cycle {
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 32)]
        max: usize,
    },
    /// fixed Type I point, or the cycle through a disk point
    Classify {
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 32)]
        max: usize,
    },
    JuliaTest {
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 32)]
        max: usize,
    },
    LocalDegree {
        #[arg(long)]
        point: String,
    },
    Tangent {
        #[arg(long)]
        point: String,
        #[arg(long)]
        dir: String,
    },
    Reduction {
        #[arg(long)]
        point: String,
    },
    BadDirs {
        #[arg(long)]
        point: String,
    },
    GoodReduction,
    /// contraction attractor, or the attracting classical point of a disk
    /// when `--center` is given
    Attractor {
        #[arg(long)]
        center: Option<String>,
        #[arg(long, default_value = "0")]
        radius: String,
        #[arg(long, default_value = "1/1000")]
        tol: String,
        #[arg(long, default_value_t = 200)]
        max: usize,
    },
    Exceptional,
    /// valuation of a function at a point
    Norm {
        #[arg(long)]
        func: String,
        #[arg(long)]
        point: String,
    },
    Dist {
        #[arg(long)]
        p1: String,
        #[arg(long)]
        p2: String,
    },
    TreeDot {
        #[arg(long)]
        points: String,
    },
}

/// Outcome of a command: the JSON fields and whether the answer is only
/// indeterminate.
struct Reply {
    fields: Map<String, Value>,
    indeterminate: bool,
}

impl Reply {
    fn ok(v: Value) -> Self {
        Reply { fields: into_map(v), indeterminate: false }
    }
    fn unsure(v: Value) -> Self {
        Reply { fields: into_map(v), indeterminate: true }
    }
}

fn into_map(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other);
            m
        }
    }
}

fn s<T: ToString>(t: T) -> Value {
    Value::String(t.to_string())
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::ZeroDivision => "ZeroDivision",
        Error::CoeffRootUnavailable(_) => "CoeffRootUnavailable",
        Error::PrecisionLoss(_) => "PrecisionLoss",
        Error::PoleAtCenter => "PoleAtCenter",
        Error::PoleInDisk => "PoleInDisk",
        Error::InfiniteWdeg => "InfiniteWdeg",
        Error::TypeIUnsupported => "TypeIUnsupported",
        Error::SamePoint => "SamePoint",
        Error::InvalidPhi1(_) => "InvalidPhi1",
        Error::NotFixed => "NotFixed",
        Error::NotContracting(_) => "NotContracting",
        Error::HypothesisFailed(_) => "HypothesisFailed",
        Error::Indeterminate(_) => "Indeterminate",
        Error::Syntax { .. } => "SyntaxError",
        Error::Invalid(_) => "Invalid",
    }
}

fn error_value(e: &Error) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), s(error_kind(e)));
    m.insert("message".into(), s(e));
    if let Error::Syntax { line, col, .. } = e {
        m.insert("line".into(), json!(line));
        m.insert("col".into(), json!(col));
    }
    Value::Object(m)
}

/// Runs one CLI invocation; returns the text for stdout and the exit code
/// (0 ok, 2 indeterminate, 1 error).
pub fn run<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return (e.to_string(), 0);
            }
            let v = json!({"status": "error", "error": {"kind": "Usage", "message": e.to_string()}});
            return (format!("{v}\n"), 1);
        }
    };
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> (String, i32) {
    let loaded = match &cli.map {
        None => Ok(None),
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
            .and_then(|t| parse_spec(&t))
            .map(Some),
    };
    let order = match &loaded {
        Ok(Some((spec, _))) => spec.order.clone(),
        _ => default_order(),
    };
    let result = loaded.and_then(|m| run_command(&cli.cmd, m.as_ref().map(|(s, p)| (s, p))));
    let mut out = Map::new();
    let code = match result {
        Ok(reply) => {
            let (status, code) = if reply.indeterminate { ("indeterminate", 2) } else { ("ok", 0) };
            out.insert("status".into(), s(status));
            out.insert("precision_order".into(), s(&order));
            out.extend(reply.fields);
            code
        }
        Err(e) => {
            let (status, code) = if e.is_indeterminate() { ("indeterminate", 2) } else { ("error", 1) };
            out.insert("status".into(), s(status));
            out.insert("precision_order".into(), s(&order));
            out.insert("error".into(), error_value(&e));
            code
        }
    };
    (format!("{}\n", Value::Object(out)), code)
}

fn need_map<'a>(m: Option<(&'a MapSpec, &'a SkewProduct)>) -> Result<(&'a MapSpec, &'a SkewProduct)> {
    m.ok_or_else(|| Error::Invalid("this command needs --map <spec file>".into()))
}

fn point_arg(src: &str, spec: Option<&MapSpec>) -> Result<BerkPoint> {
    let p = parse_point(src)?;
    if spec.is_some_and(|s| !s.theta) && p.kind() == 3 {
        return Err(Error::Invalid("irrational radii are disabled by the spec (theta = false)".into()));
    }
    Ok(p)
}

fn hyp_name(c: HypClass) -> &'static str {
    match c {
        HypClass::Indifferent => "indifferent",
        HypClass::Attracting => "attracting",
        HypClass::Repelling => "repelling",
        HypClass::Saddle => "saddle",
    }
}

fn num_name(c: NumClass) -> &'static str {
    match c {
        NumClass::NumAttracting => "num_attracting",
        NumClass::NumIndifferent => "num_indifferent",
        NumClass::NumRepelling => "num_repelling",
    }
}

fn type_i_name(c: TypeIClass) -> &'static str {
    match c {
        TypeIClass::Superattracting => "superattracting",
        TypeIClass::Superrepelling => "superrepelling",
        TypeIClass::Attracting => "attracting",
        TypeIClass::Repelling => "repelling",
        TypeIClass::Indifferent => "indifferent",
    }
}

fn cycle_value(c: &dynclass::CycleReport) -> Value {
    json!({
        "period": c.period,
        "preperiod": c.preperiod,
        "points": c.points.iter().map(s).collect::<Vec<_>>(),
        "degree_product": c.degree_product,
        "q_power": s(&c.q_power),
        "multiplier": s(c.multiplier()),
    })
}

fn find_cycle(phi: &SkewProduct, z: &BerkPoint, max: usize) -> Result<std::result::Result<dynclass::CycleReport, usize>> {
    Ok(match detect_cycle(phi, z, max)? {
        CycleSearch::Cycle(c) => Ok(c),
        CycleSearch::NotPeriodicWithin(n) => Err(n),
    })
}

fn classical(p: &BerkPoint) -> Option<&Classical> {
    match p {
        BerkPoint::TypeI(a) => Some(a),
        _ => None,
    }
}

fn run_command(cmd: &Cmd, map: Option<(&MapSpec, &SkewProduct)>) -> Result<Reply> {
    let spec = map.map(|(s, _)| s);
    match cmd {
        Cmd::Eval { point } => {
            let (_, phi) = need_map(map)?;
            let z = point_arg(point, spec)?;
            Ok(Reply::ok(json!({"image": s(phi.apply_point(&z)?)})))
        }
        Cmd::Orbit { point, steps } => {
            let (_, phi) = need_map(map)?;
            let o = dynclass::orbit(phi, &point_arg(point, spec)?, *steps);
            let pts: Vec<Value> = o.points.iter().map(s).collect();
            Ok(match o.stopped {
                None => Reply::ok(json!({"orbit": pts})),
                Some(e) => Reply::unsure(json!({"orbit": pts, "stopped": error_value(&e)})),
            })
        }
        Cmd::Cycle { point, max } => {
            let (_, phi) = need_map(map)?;
            Ok(match find_cycle(phi, &point_arg(point, spec)?, *max)? {
                Ok(c) => Reply::ok(cycle_value(&c)),
                Err(n) => Reply::ok(json!({"not_periodic_within": n})),
            })
        }
        Cmd::Classify { point, max } => {
            let (_, phi) = need_map(map)?;
            let z = point_arg(point, spec)?;
            if let Some(a) = classical(&z) {
                let r = classify_fixed_type_i(phi, a)?;
                return Ok(Reply::ok(json!({
                    "class": type_i_name(r.class),
                    "dq": s(&r.dq),
                    "degree": r.degree,
                    "multiplier_exp": r.multiplier_exp.as_ref().map(s),
                })));
            }
            let c = match find_cycle(phi, &z, *max)? {
                Ok(c) => c,
                Err(n) => return Ok(Reply::unsure(json!({"not_periodic_within": n}))),
            };
            let r = classify_fixed_hyperbolic(phi, &c)?;
            let dirs: Vec<Value> =
                r.directions.iter().map(|(d, m)| json!({"direction": s(d), "multiplier": s(m)})).collect();
            Ok(Reply::ok(json!({
                "class": hyp_name(r.class),
                "numerical": num_name(r.numerical),
                "multiplier": s(&r.multiplier),
                "period": c.period,
                "directions": dirs,
                "generic": r.generic.as_ref().map(s),
            })))
        }
        Cmd::JuliaTest { point, max } => {
            let (sp, phi) = need_map(map)?;
            let z = point_arg(point, spec)?;
            if let Some(a) = classical(&z) {
                return Ok(match classify_repelling_type_i(phi, a)? {
                    TypeIVerdict::Julia => Reply::ok(json!({"verdict": "julia"})),
                    TypeIVerdict::FatouPlausible { superrepelling } => {
                        Reply::ok(json!({"verdict": "fatou_plausible", "superrepelling_caveat": superrepelling}))
                    }
                });
            }
            let c = match find_cycle(phi, &z, *max)? {
                Ok(c) => c,
                Err(n) => return Ok(Reply::unsure(json!({"verdict": "indeterminate", "not_periodic_within": n}))),
            };
            let m = s(c.multiplier());
            Ok(match dynclass::julia_test(phi, &c, sp.search_bound)? {
                Verdict::Julia => Reply::ok(json!({"verdict": "julia", "multiplier": m, "period": c.period})),
                Verdict::Fatou => Reply::ok(json!({"verdict": "fatou", "multiplier": m, "period": c.period})),
                Verdict::Indeterminate(why) => Reply::unsure(json!({
                    "verdict": "indeterminate", "multiplier": m, "period": c.period, "reason": why,
                })),
            })
        }
        Cmd::LocalDegree { point } => {
            let (_, phi) = need_map(map)?;
            Ok(Reply::ok(json!({"local_degree": phi.local_degree(&point_arg(point, spec)?)?})))
        }
        Cmd::Tangent { point, dir } => {
            let (_, phi) = need_map(map)?;
            let z = point_arg(point, spec)?;
            let v = parse_direction(dir, &z)?;
            let w = phi.tangent_map(&v)?;
            Ok(Reply::ok(json!({
                "image_point": s(&w.at),
                "image": s(&w),
                "directional_degree": phi.directional_degree(&v)?,
            })))
        }
        Cmd::Reduction { point } => {
            let (_, phi) = need_map(map)?;
            let z = point_arg(point, spec)?;
            Ok(Reply::ok(json!({
                "reduction": s(phi.reduction_at(&z)?),
                "image_reduction": s(phi.image_reduction(&z)?),
            })))
        }
        Cmd::BadDirs { point } => {
            let (_, phi) = need_map(map)?;
            let b = phi.bad_directions(&point_arg(point, spec)?)?;
            let v = json!({"bad_directions": b.directions.iter().map(s).collect::<Vec<_>>(), "unresolved": b.unresolved});
            Ok(if b.unresolved > 0 { Reply::unsure(v) } else { Reply::ok(v) })
        }
        Cmd::GoodReduction => {
            let (_, phi) = need_map(map)?;
            Ok(Reply::ok(json!({"good_reduction": phi.good_reduction_test()?})))
        }
        Cmd::Attractor { center, radius, tol, max } => {
            let (_, phi) = need_map(map)?;
            if let Some(c) = center {
                let r: ValExp = radius.parse()?;
                let d = Disk::closed(parse_series(c)?, r);
                let a = dynclass::attracting_type_i_from_disk(phi, &d)?;
                return Ok(Reply::ok(json!({"fixed_point": s(&a), "exact": a.is_exact()})));
            }
            let tol = parse_rat(tol)?;
            Ok(match dynclass::contraction_attractor(phi, &tol, *max)? {
                Attractor::Fixed { point, steps } => {
                    Reply::ok(json!({"attractor": s(point), "exact": true, "steps": steps}))
                }
                Attractor::Approximate { last, steps, prefix } => Reply::ok(json!({
                    "attractor": s(last), "exact": false, "steps": steps, "prefix": prefix.as_ref().map(s),
                })),
            })
        }
        Cmd::Exceptional => {
            let (_, phi) = need_map(map)?;
            let e = dynclass::exceptional_type_i(phi)?;
            let v = json!({
                "points": e.points.iter().map(s).collect::<Vec<_>>(),
                "unresolved": e.unresolved,
                "approximate": e.approximate,
            });
            Ok(if e.unresolved > 0 { Reply::unsure(v) } else { Reply::ok(v) })
        }
        Cmd::Norm { func, point } => {
            let f = parse_expr(func)?;
            let z = point_arg(point, spec)?;
            let order = spec.map_or_else(default_order, |s| s.order.clone());
            let v = norm_at(&f, &z, &order)?;
            Ok(Reply::ok(json!({"valuation": v})))
        }
        Cmd::Dist { p1, p2 } => {
            let a = point_arg(p1, spec)?;
            let b = point_arg(p2, spec)?;
            Ok(Reply::ok(json!({"distance": s(hyp_dist(&a, &b)?)})))
        }
        Cmd::TreeDot { points } => {
            let pts = split_top_level(points).into_iter().map(|p| point_arg(p, spec)).collect::<Result<Vec<_>>>()?;
            Ok(Reply::ok(json!({"dot": emit_dot(&pts)?})))
        }
    }
}

fn parse_rat(src: &str) -> Result<Rat> {
    let v: ValExp = src.parse()?;
    v.as_rat().cloned().ok_or_else(|| Error::Invalid(format!("`{src}` is not rational")))
}

/// `-log|f|` at a point: the Gauss norm exponent at disk points, the
/// valuation of the value at classical points (`"inf"` for zeros, `"-inf"`
/// for poles).
fn norm_at(f: &RationalFunc, z: &BerkPoint, order: &Rat) -> Result<Value> {
    match z {
        BerkPoint::Disk { center, radius } => Ok(s(gauss_norm(f, center, radius)?)),
        BerkPoint::TypeI(a) => Ok(match rf_eval(f, a, order)? {
            Classical::Infinity => s("-inf"),
            Classical::Finite(v) if v.is_exact_zero() => s("inf"),
            Classical::Finite(v) => s(v.val_nonzero()?),
        }),
        BerkPoint::TypeIV(_) => Err(Error::precision("norms at Type IV points need the whole nested sequence")),
    }
}

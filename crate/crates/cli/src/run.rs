//! Command dispatch. Every command returns a text report and a JSON value;
//! failures are split into input errors and mathematical failures.

use crate::job::{JobSpec, MapSection};
use hecke_core::degrees::{builtin_table, cuspidal_fdeg, DegreeTable};
use hecke_core::exactalg::{fmt_big, fmt_q, parse_big, RatioClass, TorusPoint};
use hecke_core::langlands::{gamma0, param_from_residual_point, sl2_isotypics, adjoint_l, relative_gamma0};
use hecke_core::spectral::{
    enumerate_residual_cosets, enumerate_residual_points, formal_degree, is_residual, m_coset, HeckeSpec,
};
use hecke_core::stm::{compose, discover_stms, verify_report, DiscoveryBounds, SpectralMap};
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};
use std::fmt::Write;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug)]
pub enum Failure {
    /// Malformed or inconsistent input; exit status 2.
    Input(String),
    /// The computation ran and the mathematical check failed; exit status 1.
    Math(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 2,
            Failure::Math(_) => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Residual,
    Mu,
    Mres,
    Fdeg,
    Gamma,
    Match,
    StmVerify,
    StmDiscover,
    StmCompose,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Residual => "residual",
            Command::Mu => "mu",
            Command::Mres => "mres",
            Command::Fdeg => "fdeg",
            Command::Gamma => "gamma",
            Command::Match => "match",
            Command::StmVerify => "stm verify",
            Command::StmDiscover => "stm discover",
            Command::StmCompose => "stm compose",
        }
    }
}

pub struct Report {
    pub text: String,
    pub json: Value,
    /// Set when the report is complete but a check failed.
    pub failure: Option<String>,
}

fn input<E: ToString>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn point_json(r: &TorusPoint) -> Value {
    json!({ "s": r.s.iter().map(fmt_q).collect::<Vec<_>>(), "y": r.y.iter().map(fmt_q).collect::<Vec<_>>() })
}

fn point_text(r: &TorusPoint) -> String {
    let s: Vec<String> = r.s.iter().map(fmt_q).collect();
    let y: Vec<String> = r.y.iter().map(fmt_q).collect();
    format!("s = ({}) y = ({})", s.join(", "), y.join(", "))
}

fn ratio_json(c: &RatioClass) -> Value {
    match c {
        RatioClass::RationalMonomial { c, k } => json!({ "class": "rational-monomial", "c": fmt_big(c), "k": fmt_q(k) }),
        RatioClass::AlgebraicConstant => json!({ "class": "algebraic-constant" }),
        RatioClass::NonConstant => json!({ "class": "non-constant" }),
    }
}

fn ratio_text(c: &RatioClass) -> String {
    match c {
        RatioClass::RationalMonomial { c, k } => format!("{} * v^({})", fmt_big(c), fmt_q(k)),
        RatioClass::AlgebraicConstant => "algebraic constant".into(),
        RatioClass::NonConstant => "not constant".into(),
    }
}

pub struct Options {
    pub bound: Option<i64>,
}

struct Ctx<'a> {
    job: &'a JobSpec,
}

impl<'a> Ctx<'a> {
    fn algebra(&self, name: Option<&String>, role: &str) -> Result<(String, HeckeSpec), Failure> {
        let name = match name {
            Some(n) => n.clone(),
            None if self.job.algebras.len() == 1 => self.job.algebras.keys().next().expect("one").clone(),
            None => return Err(Failure::Input(format!("[job] must name the {role} algebra"))),
        };
        let sec = self.job.algebras.get(&name).ok_or_else(|| Failure::Input(format!("no algebra {name:?}")))?;
        let spec = sec.build().map_err(|e| Failure::Input(format!("[algebra.{name}]: {e}")))?;
        Ok((name, spec))
    }

    fn point(&self, spec: &HeckeSpec) -> Result<Option<(Vec<usize>, TorusPoint)>, Failure> {
        let Some(name) = &self.job.job.point else { return Ok(None) };
        let p = &self.job.points[name];
        let r = p.point().map_err(|e| Failure::Input(format!("[point.{name}]: {e}")))?;
        if r.rank() != spec.rank() {
            return Err(Failure::Input(format!("[point.{name}]: rank {} differs from the algebra", r.rank())));
        }
        let all: Vec<usize> = (0..spec.rd().simple().len()).collect();
        Ok(Some((p.parabolic.clone().unwrap_or(all), r)))
    }

    fn map(&self, name: &str) -> Result<SpectralMap, Failure> {
        let m: &MapSection = &self.job.maps[name];
        let ctx = |e: String| Failure::Input(format!("[map.{name}]: {e}"));
        let (_, source) = self.algebra(Some(&m.source), "source")?;
        let (_, target) = self.algebra(Some(&m.target), "target")?;
        let coset = match (&m.residual, &m.point) {
            (Some(i), None) => {
                let all = enumerate_residual_cosets(&target).map_err(|e| ctx(e.to_string()))?;
                let dim = source.rank();
                let fit: Vec<_> = all.into_iter().filter(|c| c.dim(target.rank()) == dim).collect();
                fit.get(*i).cloned().ok_or_else(|| ctx(format!("only {} residual cosets of dimension {dim}", fit.len())))?
            }
            (None, Some(p)) => {
                let sec = &self.job.points[p];
                let r = sec.point().map_err(ctx)?;
                let subset = sec.parabolic.clone().unwrap_or_else(|| (0..target.rd().simple().len()).collect());
                let cert = is_residual(&target, &subset, &r).map_err(|e| ctx(e.to_string()))?;
                hecke_core::ResidualCoset { parabolic: subset, r_l: r, certificate: cert }
            }
            _ => return Err(ctx("give exactly one of residual and point".into())),
        };
        let dim = source.rank();
        let b = m.b.clone().unwrap_or_else(|| hecke_core::lattice::identity(dim));
        let twist = if m.twist.is_empty() { vec![hecke_core::Q::from(0); dim] } else { m.twist.clone() };
        SpectralMap::from_coset(source, target, coset, b, &twist).map_err(|e| ctx(e.to_string()))
    }

    fn d_h(&self) -> Result<BigRational, Failure> {
        match &self.job.job.d_h {
            None => Ok(BigRational::one()),
            Some(s) => parse_big(s).ok_or_else(|| Failure::Input(format!("[job] d_h: bad rational {s:?}"))),
        }
    }
}

pub fn run(cmd: Command, job: &JobSpec, opts: &Options) -> Result<Report, Failure> {
    let ctx = Ctx { job };
    let mut report = match cmd {
        Command::Residual => residual(&ctx)?,
        Command::Mu => mu(&ctx)?,
        Command::Mres => mres(&ctx)?,
        Command::Fdeg => fdeg(&ctx)?,
        Command::Gamma => gamma(&ctx)?,
        Command::Match => matching(&ctx)?,
        Command::StmVerify => stm_verify(&ctx)?,
        Command::StmDiscover => stm_discover(&ctx, opts)?,
        Command::StmCompose => stm_compose(&ctx)?,
    };
    let mut wrapped = json!({ "schema": SCHEMA_VERSION, "command": cmd.name(), "status": if report.failure.is_some() { "failed" } else { "ok" } });
    wrapped.as_object_mut().expect("object").insert("result".into(), report.json.take());
    report.json = wrapped;
    Ok(report)
}

fn residual(ctx: &Ctx) -> Result<Report, Failure> {
    let (name, spec) = ctx.algebra(ctx.job.job.algebra.as_ref(), "")?;
    let cosets = enumerate_residual_cosets(&spec).map_err(input)?;
    let mut text = format!("residual cosets of {name} up to W ({} orbits)\n", cosets.len());
    let mut rows = Vec::new();
    for c in &cosets {
        let rd = spec.rd();
        let values: Vec<String> = rd
            .simple()
            .iter()
            .filter(|_| c.is_point(spec.rank()))
            .map(|&s| {
                let (p, k) = c.r_l.char_value(rd.root(s));
                format!("zeta^({}) v^({})", fmt_q(&p), fmt_q(&k))
            })
            .collect();
        let cert = c.certificate;
        writeln!(
            text,
            "dim {}  parabolic {:?}  {}  poles {} zeros {} codim {}{}",
            c.dim(spec.rank()),
            c.parabolic,
            point_text(&c.r_l),
            cert.poles,
            cert.zeros,
            cert.codim,
            if values.is_empty() { String::new() } else { format!("  simple roots: {}", values.join(", ")) }
        )
        .expect("string");
        rows.push(json!({
            "dim": c.dim(spec.rank()),
            "parabolic": c.parabolic,
            "point": point_json(&c.r_l),
            "certificate": { "poles": cert.poles, "zeros": cert.zeros, "codim": cert.codim },
        }));
    }
    Ok(Report { text, json: json!({ "algebra": name, "cosets": rows }), failure: None })
}

fn mu(ctx: &Ctx) -> Result<Report, Failure> {
    let (name, spec) = ctx.algebra(ctx.job.job.algebra.as_ref(), "")?;
    let mu = spec.mu();
    Ok(Report {
        text: format!("mu({name}) = {mu}\n"),
        json: json!({ "algebra": name, "mu": mu.to_string(), "q_w0": spec.q_w0().to_string(), "d": spec.d().to_string() }),
        failure: None,
    })
}

fn mres(ctx: &Ctx) -> Result<Report, Failure> {
    let (name, spec) = ctx.algebra(ctx.job.job.algebra.as_ref(), "")?;
    let (subset, r) = ctx.point(&spec)?.ok_or_else(|| Failure::Input("[job] must name a point".into()))?;
    let cert = is_residual(&spec, &subset, &r).map_err(input)?;
    let m = m_coset(&spec, &subset, &r).map_err(input)?;
    let failure = (!cert.is_residual()).then(|| "the coset is not residual".to_string());
    let text = format!("m at {} along {:?}: {}\n", point_text(&r), subset, m);
    Ok(Report {
        text,
        json: json!({
            "algebra": name, "point": point_json(&r), "parabolic": subset, "m": m.to_string(),
            "residual": cert.is_residual(), "poles": cert.poles, "zeros": cert.zeros, "codim": cert.codim,
        }),
        failure,
    })
}

fn fdeg(ctx: &Ctx) -> Result<Report, Failure> {
    if let Some(label) = &ctx.job.job.cuspidal {
        let mut table = builtin_table();
        if let Some(path) = &ctx.job.job.degree_table {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
            table.merge(DegreeTable::parse(&text).map_err(input)?);
        }
        let entry = table.get(label).ok_or_else(|| Failure::Input(format!("no degree table entry {label:?}")))?;
        let f = cuspidal_fdeg(&entry.datum().map_err(input)?).map_err(input)?;
        return Ok(Report {
            text: format!("fdeg({label}) = {f}\n"),
            json: json!({ "cuspidal": label, "fdeg": f.to_string() }),
            failure: None,
        });
    }
    let (name, spec) = ctx.algebra(ctx.job.job.algebra.as_ref(), "")?;
    let d_h = ctx.d_h()?;
    let points: Vec<TorusPoint> = match ctx.point(&spec)? {
        Some((_, r)) => vec![r],
        None => enumerate_residual_points(&spec).map_err(input)?.into_iter().map(|c| c.r_l).collect(),
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut failure = None;
    for r in &points {
        match formal_degree(&spec, r, &d_h) {
            Ok(f) => {
                let f = f.positive_part();
                writeln!(text, "{}  fdeg = {}", point_text(r), f).expect("string");
                rows.push(json!({ "point": point_json(r), "fdeg": f.to_string() }));
            }
            Err(e) => {
                writeln!(text, "{}  {}", point_text(r), e).expect("string");
                rows.push(json!({ "point": point_json(r), "error": e.to_string() }));
                failure = Some(e.to_string());
            }
        }
    }
    Ok(Report { text, json: json!({ "algebra": name, "points": rows }), failure })
}

fn gamma(ctx: &Ctx) -> Result<Report, Failure> {
    let name = ctx.job.job.param.clone().ok_or_else(|| Failure::Input("[job] must name a param".into()))?;
    let p = ctx.job.params[&name].build().map_err(|e| Failure::Input(format!("[param.{name}]: {e}")))?;
    let table = sl2_isotypics(&p).map_err(input)?;
    let l = adjoint_l(&p).map_err(input)?;
    let g = if p.levi.is_some() { relative_gamma0(&p) } else { gamma0(&p) }.map_err(input)?;
    let iso: Vec<Value> = table
        .entries
        .iter()
        .map(|((n, z), m)| json!({ "n": n, "zeta": fmt_q(z), "m": m }))
        .collect();
    let mut text = format!("L(s) = {l}   (z = q^-s)\n");
    writeln!(text, "gamma(0): order {}  value {}", g.order, g.value).expect("string");
    Ok(Report {
        text,
        json: json!({
            "param": name, "isotypics": iso, "L": l.to_string(),
            "order": g.order, "value": g.value.to_string(), "conductor": g.conductor,
        }),
        failure: None,
    })
}

fn matching(ctx: &Ctx) -> Result<Report, Failure> {
    let (name, spec) = ctx.algebra(ctx.job.job.algebra.as_ref(), "")?;
    let d_h = ctx.d_h()?;
    let mut text = format!("fdeg / |gamma(0)| over the residual points of {name}\n");
    let mut rows = Vec::new();
    let mut failure = None;
    for c in enumerate_residual_points(&spec).map_err(input)? {
        let r = &c.r_l;
        let f = formal_degree(&spec, r, &d_h).map_err(input)?.positive_part();
        let row = match param_from_residual_point(&spec, r).map_err(|e| e.to_string()).and_then(|p| gamma0(&p).map_err(|e| e.to_string())) {
            Ok(g) => {
                let cls = f.magnitude_ratio_class(&g.value).map_err(input)?;
                if !matches!(cls, RatioClass::RationalMonomial { .. }) || g.order != 0 {
                    failure = Some(format!("no match at {}", point_text(r)));
                }
                writeln!(text, "{}  gamma order {}  ratio {}", point_text(r), g.order, ratio_text(&cls)).expect("string");
                json!({ "point": point_json(r), "fdeg": f.to_string(), "gamma0": g.value.to_string(), "order": g.order, "ratio": ratio_json(&cls) })
            }
            Err(e) => {
                failure = Some(e.clone());
                writeln!(text, "{}  {}", point_text(r), e).expect("string");
                json!({ "point": point_json(r), "error": e })
            }
        };
        rows.push(row);
    }
    Ok(Report { text, json: json!({ "algebra": name, "points": rows }), failure })
}

fn map_json(m: &SpectralMap) -> Value {
    json!({ "a": m.a, "base": point_json(&m.base) })
}

fn verify_block(m: &SpectralMap, label: &str, text: &mut String) -> (Value, Option<String>) {
    let r = verify_report(m);
    let line = match (&r.d, r.status.as_str()) {
        (Some(d), "verified") => format!("{label}: verified, D = {d}"),
        (Some(d), _) => format!("{label}: {}, c = {d}, v^({})", r.status, r.v_exp.clone().unwrap_or_default()),
        _ => format!("{label}: {} ({})", r.status, r.diagnostics.join("; ")),
    };
    writeln!(text, "{line}").expect("string");
    let failure = (r.status != "verified").then(|| line.clone());
    (serde_json::to_value(&r).expect("serializable"), failure)
}

fn stm_verify(ctx: &Ctx) -> Result<Report, Failure> {
    let name = ctx.job.job.map.clone().ok_or_else(|| Failure::Input("[job] must name a map".into()))?;
    let m = ctx.map(&name)?;
    let mut text = String::new();
    let (v, failure) = verify_block(&m, &name, &mut text);
    Ok(Report { text, json: json!({ "map": name, "verify": v, "psi": map_json(&m) }), failure })
}

fn stm_discover(ctx: &Ctx, opts: &Options) -> Result<Report, Failure> {
    let (sname, source) = ctx.algebra(ctx.job.job.source.as_ref(), "source")?;
    let (tname, target) = ctx.algebra(ctx.job.job.target.as_ref(), "target")?;
    let bound = opts.bound.or(ctx.job.job.bound).unwrap_or(2);
    if bound < 0 {
        return Err(Failure::Input("bound must be nonnegative".into()));
    }
    let found = discover_stms(&source, &target, DiscoveryBounds::uniform(bound)).map_err(input)?;
    let mut text = format!("{} maps {sname} -> {tname} at bound {bound}\n", found.maps.len());
    let maps: Vec<Value> = found
        .maps
        .iter()
        .map(|(m, d)| {
            writeln!(text, "A = {:?}  base {}  D = {}", m.a, point_text(&m.base), fmt_big(d)).expect("string");
            json!({ "psi": map_json(m), "D": fmt_big(d) })
        })
        .collect();
    let near: Vec<Value> = found
        .near_misses
        .iter()
        .map(|(m, c, k)| {
            writeln!(text, "near miss: A = {:?}  base {}  c = {}  v^({})", m.a, point_text(&m.base), fmt_big(c), fmt_q(k))
                .expect("string");
            json!({ "psi": map_json(m), "c": fmt_big(c), "vExp": fmt_q(k) })
        })
        .collect();
    let failure = found.maps.is_empty().then(|| "no spectral transfer map found".to_string());
    Ok(Report {
        text,
        json: json!({ "source": sname, "target": tname, "bound": bound, "maps": maps, "near_misses": near }),
        failure,
    })
}

fn stm_compose(ctx: &Ctx) -> Result<Report, Failure> {
    let j = &ctx.job.job;
    let (Some(o), Some(i)) = (&j.outer, &j.inner) else {
        return Err(Failure::Input("[job] must name outer and inner maps".into()));
    };
    let (outer, inner) = (ctx.map(o)?, ctx.map(i)?);
    let composite = compose(&outer, &inner).map_err(input)?;
    let mut text = String::new();
    let (vo, fo) = verify_block(&outer, o, &mut text);
    let (vi, fi) = verify_block(&inner, i, &mut text);
    let (vc, fc) = verify_block(&composite, "composite", &mut text);
    Ok(Report {
        text,
        json: json!({ "outer": vo, "inner": vi, "composite": vc, "psi": map_json(&composite) }),
        failure: fc.or(fo).or(fi),
    })
}

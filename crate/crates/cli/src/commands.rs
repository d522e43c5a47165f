use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use fixres::burnside::{self, TableOfMarks};
use fixres::catalog;
use fixres::classify::{self, DressVerdict, DressWitness};
use fixres::crystallo::{self as numbers, CrystalData, Matrix};
use fixres::gcomplex::{GComplex, Weight};
use fixres::group::{prime_factors, Group, GroupHom, SubgroupLattice};
use fixres::io::{self, AssembleSpec, ComplexSpec, DfhSpec, IntSpec, ResolutionSpec, TrSpec};
use fixres::oliver;
use fixres::resolution::{resolve as resolve_data, ResolutionData};
use fixres::transfer::{self, Family};

use crate::{
    load_group, read_json, to_value, write_json, Cli, CliError, CliResult, CrystalloCommand, GroupArgs, Mode,
    NamedGroup, Outcome, TransferCommand,
};

fn lattice(cli: &Cli, g: &Group) -> SubgroupLattice {
    SubgroupLattice::best_effort(g, cli.order_cap)
}

/// Integers that fit in 64 bits as JSON numbers, larger ones as strings.
fn int_value(x: &BigInt) -> Value {
    x.to_i64().map(Value::from).unwrap_or_else(|| Value::from(x.to_string()))
}

fn witness_value(g: &Group, w: &DressWitness) -> Value {
    json!({
        "p": w.p,
        "q": w.q,
        "P": io::subgroup_spec(g, &w.p_sub),
        "H": io::subgroup_spec(g, &w.h_sub),
        "normalized": w.normalized,
    })
}

pub fn classify(cli: &Cli, ng: &NamedGroup) -> CliResult<Outcome> {
    let g = &ng.group;
    let l = lattice(cli, g);
    let verdict = classify::is_dress(g, &l);
    let witness = match &verdict {
        DressVerdict::Dress(w) => Some(witness_value(g, &classify::dress_normalize(g, w)?)),
        _ => None,
    };
    let whole = g.whole();
    let cyclic_mod: Vec<u64> = prime_factors(g.order() as u64)
        .into_iter()
        .filter(|&p| classify::cyclic_mod_p(g, &l, &whole, p).is_some())
        .collect();
    let depth = if l.is_complete() { Some(classify::depth(g, &l)?.depth) } else { None };
    Ok(Outcome::ok(json!({
        "dress": verdict.is_dress(),
        "witness": witness,
        "cyclic_mod": cyclic_mod,
        "depth": depth,
        "omega": classify::omega(g.order() as u64),
        "bd": depth.map(|d| classify::bd(d as u64)),
        "order": g.order(),
        "complete": l.is_complete(),
    })))
}

pub fn depth(cli: &Cli, ng: &NamedGroup) -> CliResult<Outcome> {
    let g = &ng.group;
    let l = lattice(cli, g);
    let d = classify::depth(g, &l)?;
    let chain: Vec<usize> = d.chain.iter().map(|&i| l.subgroup(i).order()).collect();
    Ok(Outcome::ok(json!({
        "depth": d.depth,
        "omega": d.omega,
        "chain_orders": chain,
        "within_omega_bound": d.depth as u32 <= d.omega + 1,
    })))
}

pub fn marks(cli: &Cli, ng: &NamedGroup) -> CliResult<Outcome> {
    let g = &ng.group;
    let t: TableOfMarks = burnside::marks(g, &lattice(cli, g))?;
    Ok(Outcome::ok(json!({
        "class_orders": t.class_orders,
        "class_sizes": t.class_sizes,
        "weyl_orders": t.weyl_orders(),
        "marks": t.marks,
    })))
}

pub fn resolving(cli: &Cli, ng: &NamedGroup, find_unit: bool) -> CliResult<Outcome> {
    let g = &ng.group;
    let l = lattice(cli, g);
    let r = burnside::r_invariant(g, &l)?;
    let mut out = serde_json::Map::new();
    out.insert("r".into(), int_value(&r));
    if find_unit {
        let phi = burnside::find_unit_resolving(g, &l)?;
        burnside::verify_resolving(g, &l, &phi)?;
        let orders: Vec<usize> = (0..l.classes().len()).map(|c| l.representative(c).order()).collect();
        out.insert("class_orders".into(), to_value(&orders));
        out.insert("phi".into(), Value::Array(phi.iter().map(int_value).collect()));
    }
    Ok(Outcome::ok(Value::Object(out)))
}

pub fn oliver(cli: &Cli, ng: &NamedGroup, phi: Option<&Path>) -> CliResult<Outcome> {
    let g = &ng.group;
    let l = lattice(cli, g);
    let phi_big: Vec<BigInt> = match phi {
        Some(path) => {
            let raw: Vec<IntSpec> = read_json(path)?;
            raw.iter().map(IntSpec::to_bigint).collect::<fixres::Result<_>>()?
        }
        None => burnside::find_unit_resolving(g, &l)?,
    };
    let phi = burnside::phi_to_i64(&phi_big)?;
    let trace = oliver::build_y(g, &l, &phi)?;
    let t = burnside::marks(g, &l)?;
    let verified = oliver::verify_build(&l, &t, &trace);
    let join = oliver::complete_and_join(g, &l, &trace.y0)?;
    let ok = verified.is_ok() && join.within_bound;
    Ok(Outcome {
        value: json!({
            "phi": phi,
            "targets": trace.targets,
            "ranks": trace.ranked.rank,
            "steps": to_value(&trace.steps),
            "y0": to_value(&trace.y0),
            "verified": verified.is_ok(),
            "verify_error": verified.err().map(|e| e.to_string()),
            "join": to_value(&join),
        }),
        ok,
    })
}

pub fn resolve(
    complex: Option<&Path>,
    data: Option<&Path>,
    out: Option<&Path>,
    source: &GroupArgs,
) -> CliResult<Outcome> {
    let fallback = load_group(source)?.map(|ng| Arc::new(ng.group));
    let spec: Option<ResolutionSpec> = data.map(read_json).transpose()?;
    let base_spec: ComplexSpec = match (complex, spec.as_ref().and_then(|s| s.base.clone())) {
        (Some(path), _) => read_json(path)?,
        (None, Some(b)) => b,
        (None, None) => return Err(CliError::Usage("a base complex is required: --complex".into())),
    };
    let base = io::gcomplex_from_spec(&base_spec, fallback)?;
    base.validate().map_err(|v| fixres::Error::InvalidComplex(v.to_string()))?;
    let data = match &spec {
        Some(s) => s.build(base)?,
        None => ResolutionData::points(base)?,
    };
    let y = resolve_data(&data)?;
    let partition = y.check_partition(&data).is_ok();
    let stabilizers = y.check_stabilizers(&data).is_ok();
    let dim = y.complex.dimension();
    let bound = y.dimension_bound();
    if let Some(path) = out {
        write_json(path, &ComplexSpec::from_gcomplex(&y.complex, true))?;
    }
    Ok(Outcome {
        value: json!({
            "vertices": y.complex.complex().vertex_count(),
            "simplices": y.complex.complex().len(),
            "f_vector": y.complex.complex().f_vector(),
            "dimension": dim,
            "bound": bound,
            "base_dim": y.base_dim,
            "fiber_dim": y.fiber_dim,
            "euler_char": y.complex.euler_char(),
            "partition": partition,
            "stabilizers": stabilizers,
        }),
        ok: partition && stabilizers && dim <= bound,
    })
}

fn check_dfh_typed<W: Weight>(spec: Option<DfhSpec>, fixture: Option<&str>, lambda: &str, epsilon: &str, emit: Option<&Path>) -> CliResult<Outcome> {
    let w = match (spec, fixture) {
        (Some(s), _) => s.build::<W>()?,
        (None, Some(name)) => {
            let entry = catalog::lookup(name).ok_or_else(|| CliError::Usage(format!("no catalog group named {name:?}")))?;
            let g = Arc::new(entry.build()?);
            transfer::dfh_fixture(g, &io::parse_weight::<W>(lambda)?, io::parse_weight(epsilon)?)?
        }
        (None, None) => return Err(CliError::Usage("give --witness or --fixture".into())),
    };
    if let Some(path) = emit {
        write_json(path, &DfhSpec::from_witness(&w))?;
    }
    let report = transfer::check_dfh(&w)?;
    Ok(Outcome { ok: report.passed, value: to_value(&report) })
}

fn check_ctr_typed<W: Weight>(spec: &TrSpec, samples: usize, seed: u64) -> CliResult<Outcome> {
    let w = spec.build::<W>()?;
    let report = transfer::check_ctr(&w, samples, seed)?;
    Ok(Outcome { ok: report.passed, value: to_value(&report) })
}

struct AssembleOpts<'a> {
    fixture: Option<&'a str>,
    fibers: &'a str,
    lambda: &'a str,
    epsilon: &'a str,
    samples: usize,
    out: Option<&'a Path>,
    emit_input: Option<&'a Path>,
}

fn assemble_typed<W: Weight>(input: Option<AssembleSpec>, o: &AssembleOpts, seed: u64) -> CliResult<Outcome> {
    let spec = match (input, o.fixture) {
        (Some(s), _) => s,
        (None, Some(name)) => {
            let x_f: GComplex = match name {
                "c2" => transfer::c2_edge(),
                "s3" => transfer::s3_triangle(),
                _ => return Err(CliError::Usage(format!("unknown assembly fixture {name:?} (c2 or s3)"))),
            };
            let pi = GroupHom::identity(x_f.group().clone());
            let lambda = io::parse_weight::<W>(o.lambda)?;
            let fibers = match o.fibers {
                "star" => transfer::regular_fibers(&x_f, &lambda),
                "point" => transfer::point_fibers::<W>(&pi, &x_f)?,
                f => return Err(CliError::Usage(format!("unknown fiber kind {f:?} (star or point)"))),
            };
            let eps = io::parse_weight::<W>(o.epsilon)?;
            let s = x_f.group().symmetric_generators();
            AssembleSpec::from_parts(&pi, &x_f, &fibers, &s, &eps, &Family::All)
        }
        (None, None) => return Err(CliError::Usage("give --input or --fixture".into())),
    };
    if let Some(path) = o.emit_input {
        write_json(path, &spec)?;
    }
    let inp = spec.build::<W>()?;
    let a = transfer::assemble(&inp.pi, &inp.x_f, &inp.fibers, &inp.s, inp.epsilon, inp.family)?;
    let ctr = transfer::check_ctr(&a.witness, o.samples, seed)?;
    if let Some(path) = o.out {
        write_json(path, &TrSpec::from_witness(&a.witness))?;
    }
    let dim = a.witness.e.dimension();
    let ok = ctr.passed && a.bound_violations == 0 && dim <= a.witness.nu as i64;
    Ok(Outcome {
        value: json!({
            "beta": a.beta,
            "n": a.n,
            "nu": a.witness.nu,
            "dimension": dim,
            "vertices": a.witness.e.complex().vertex_count(),
            "input_defect": a.input_defect.to_string(),
            "bound_checks": a.bound_checks,
            "bound_violations": a.bound_violations,
            "ctr": to_value(&ctr),
        }),
        ok,
    })
}

pub fn transfer(cli: &Cli, t: &TransferCommand) -> CliResult<Outcome> {
    match t {
        TransferCommand::CheckDfh { witness, fixture, lambda, epsilon, emit } => {
            let spec: Option<DfhSpec> = witness.as_deref().map(read_json).transpose()?;
            let f = fixture.as_deref();
            match cli.mode {
                Mode::Exact => check_dfh_typed::<BigRational>(spec, f, lambda, epsilon, emit.as_deref()),
                Mode::Float => check_dfh_typed::<f64>(spec, f, lambda, epsilon, emit.as_deref()),
            }
        }
        TransferCommand::CheckCtr { witness, samples } => {
            let spec: TrSpec = read_json(witness)?;
            match cli.mode {
                Mode::Exact => check_ctr_typed::<BigRational>(&spec, *samples, cli.seed),
                Mode::Float => check_ctr_typed::<f64>(&spec, *samples, cli.seed),
            }
        }
        TransferCommand::Assemble { input, fixture, fibers, lambda, epsilon, samples, out, emit_input } => {
            let spec: Option<AssembleSpec> = input.as_deref().map(read_json).transpose()?;
            let opts = AssembleOpts {
                fixture: fixture.as_deref(),
                fibers,
                lambda,
                epsilon,
                samples: *samples,
                out: out.as_deref(),
                emit_input: emit_input.as_deref(),
            };
            match cli.mode {
                Mode::Exact => assemble_typed::<BigRational>(spec, &opts, cli.seed),
                Mode::Float => assemble_typed::<f64>(spec, &opts, cli.seed),
            }
        }
    }
}

fn parse_poly(poly: &str, n: Option<u32>) -> CliResult<numbers::Poly> {
    if poly == "On" {
        let n = n.ok_or_else(|| CliError::Usage("--poly On needs --n".into()))?;
        return Ok(numbers::Poly::On(n));
    }
    poly.split(',')
        .map(|c| c.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map(numbers::Poly::Coefficients)
        .map_err(|_| CliError::Usage(format!("--poly {poly:?}: expected On or comma-separated integers")))
}

pub fn crystallo(c: &CrystalloCommand) -> CliResult<Outcome> {
    match c {
        CrystalloCommand::Quotient { n, fgens, s } => {
            let gens: Vec<Matrix> = read_json(fgens)?;
            let data = CrystalData::new(*n, gens)?;
            let bundle = numbers::quotient_bundle(&data, *s)?;
            let report = numbers::dress_subgroups_surjecting(&bundle)?;
            let splitting = if *n == 2 { Some(to_value(&numbers::invariant_splitting(&data)?)) } else { None };
            Ok(Outcome::ok(json!({
                "order": bundle.order(),
                "f_order": data.f_order(),
                "surjecting_dress": to_value(&report),
                "splitting": splitting,
            })))
        }
        CrystalloCommand::Dichotomy { n, m, s, r, nu, o } => {
            let m: Matrix = read_json(m)?;
            if let Some(n) = n {
                if m.len() != *n {
                    return Err(CliError::Usage(format!("--n {n} but the matrix has {} rows", m.len())));
                }
            }
            let report = numbers::dichotomy_check(&m, *s, *r, *nu, *o)?;
            Ok(Outcome { ok: report.all_hold, value: to_value(&report) })
        }
        CrystalloCommand::Primes { poly, n, rho, mu, k, count, limit } => {
            let f = parse_poly(poly, *n)?;
            let found = numbers::prime_search(&f, *rho, *mu, *k, *count, *limit)?;
            Ok(Outcome::ok(to_value(&found)))
        }
        CrystalloCommand::Gl { n, s } => {
            let order = numbers::gl_order(*n, *s)?;
            Ok(Outcome::ok(json!({ "n": n, "s": s, "order": order.to_string() })))
        }
        CrystalloCommand::Kernel { p, c1, c2 } => {
            let (a, b) = numbers::kernel_hom(*p, (*c1, *c2))?;
            Ok(Outcome::ok(json!({ "kernel": [a, b] })))
        }
    }
}

pub fn catalog(cli: &Cli, verify: bool) -> CliResult<Outcome> {
    let entries = catalog::catalog();
    if !verify {
        return Ok(Outcome::ok(to_value(&entries)));
    }
    let mut ok = true;
    let mut rows = Vec::new();
    for e in &entries {
        let g = e.build()?;
        let l = lattice(cli, &g);
        let dress = classify::is_dress(&g, &l).is_dress();
        let depth = classify::depth(&g, &l).ok().map(|d| d.depth);
        let r = burnside::r_invariant(&g, &l).ok().and_then(|r| r.to_u32());
        let matches = dress == Some(e.dress) && depth == Some(e.depth) && (e.r.is_none() || r == e.r);
        ok &= matches;
        rows.push(json!({
            "name": e.name,
            "order": e.order,
            "dress": dress,
            "depth": depth,
            "r": r,
            "matches": matches,
        }));
    }
    Ok(Outcome { value: Value::Array(rows), ok })
}

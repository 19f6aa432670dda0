use std::path::Path;

use anyhow::Context;
use exseq_core::riedtmann::{self, MIN_MARGIN};
use exseq_core::silting::{self, Kind};
use exseq_core::weyl::{self, NCTuple};
use exseq_core::{DCollection, DerivedCategory, MutationRun, Transport, WindowSpec};
use serde_json::{json, Value};

use crate::io::{self, Format};
use crate::setup::{self, usage};
use crate::verify;
use crate::{DirectionArg, KindArg, TypeArgs};

fn prepare(t: &TypeArgs) -> anyhow::Result<exseq_core::RootSystem> {
    setup::set_jobs(t.jobs)?;
    setup::root_system(&t.ty, t.orientation.as_deref())
}

pub fn enumerate(
    t: &TypeArgs,
    m: i32,
    kind: KindArg,
    window: Option<&str>,
    out: Format,
    file: Option<&Path>,
) -> anyhow::Result<bool> {
    let rs = prepare(t)?;
    let kind = match (kind, window) {
        (KindArg::SiltingInWindow, Some(w)) => {
            let (lo, hi) = setup::parse_window(w)?;
            Kind::SiltingInWindow(WindowSpec::degrees(lo, hi))
        }
        (KindArg::SiltingInWindow, None) => return Err(usage("silting-in-window needs --window lo:hi")),
        (_, Some(_)) => return Err(usage("--window only applies to silting-in-window")),
        (KindArg::MClusterTilting, None) => Kind::MClusterTilting,
        (KindArg::MConfig, None) => Kind::MConfig,
        (KindArg::MConfigMinus, None) => Kind::MConfigMinus,
        (KindArg::SiltingDeg1Window, None) => Kind::SiltingDeg1Window,
    };
    if !matches!(kind, Kind::SiltingInWindow(_)) {
        setup::require_m(m)?;
    }
    let cat = setup::category(rs)?;
    let all = silting::enumerate(&cat, kind, m)?;
    eprintln!("{} {kind}: {}", cat.root_system().dynkin_type(), all.len());
    io::emit(file, &io::render_collections(&cat, &all, out)?)?;
    Ok(true)
}

pub fn verify(t: &TypeArgs, m: i32) -> anyhow::Result<bool> {
    let rs = prepare(t)?;
    setup::require_m(m)?;
    let report = verify::run(&rs, m)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(report.pass)
}

fn run_json(cat: &DerivedCategory, run: &MutationRun) -> Value {
    let steps: Vec<Value> = run
        .steps
        .iter()
        .map(|s| {
            json!({
                "pos": s.pos,
                "dir": format!("{:?}", s.dir).to_lowercase(),
                "sign": format!("{:?}", s.sign).to_lowercase(),
                "pair": [cat.show(s.before.0), cat.show(s.before.1)],
                "after": s.after.show(cat),
            })
        })
        .collect();
    json!({ "result": run.seq.show(cat), "steps": steps })
}

fn transport_trace(cat: &DerivedCategory, tr: &Transport) -> Value {
    json!({ "ordered": tr.ordered.show(cat), "mutations": run_json(cat, &tr.run) })
}

fn nc_json(w: &exseq_core::Weyl, t: &NCTuple) -> anyhow::Result<Value> {
    Ok(serde_json::to_value(t.to_record(w, false)?)?)
}

pub fn biject(
    t: &TypeArgs,
    direction: DirectionArg,
    input: &Path,
    m: Option<i32>,
    trace: bool,
    file: Option<&Path>,
) -> anyhow::Result<bool> {
    let rs = prepare(t)?;
    let cat = setup::category(rs.clone())?;
    let needs_weyl = !matches!(direction, DirectionArg::SiltingToConfig | DirectionArg::ConfigToSilting);
    let weyl = if needs_weyl { Some(setup::weyl(&rs)?) } else { None };
    let m_for_nc = match (direction, m) {
        (DirectionArg::ConfigToNc | DirectionArg::SiltingToNc, None) => {
            return Err(usage("--m is required for this direction"));
        }
        (_, Some(m)) => Some(setup::require_m(m)?),
        (_, None) => None,
    };
    let data = io::read_json(input)?;
    let records = match direction {
        DirectionArg::NcToConfig => io::nc_values(data)?,
        _ => io::collection_values(data)?,
    };

    let one = |v: &Value| -> anyhow::Result<(Value, Option<Value>)> {
        match direction {
            DirectionArg::SiltingToConfig | DirectionArg::ConfigToSilting => {
                let x = io::parse_collection(&cat, v)?;
                let tr = if direction == DirectionArg::SiltingToConfig {
                    silting::silting_to_config(&cat, &x)?
                } else {
                    silting::config_to_silting(&cat, &x)?
                };
                Ok((io::collection_json(&cat, &tr.output), trace.then(|| transport_trace(&cat, &tr))))
            }
            DirectionArg::NcToConfig => {
                let w = weyl.as_ref().expect("weyl group built");
                let tuple = NCTuple::from_record(w, &io::parse_nc_record(v)?)?;
                if let Some(m) = m_for_nc {
                    if tuple.m() != m {
                        anyhow::bail!("tuple has {} parts, --m {m} needs {}", tuple.parts.len(), m + 1);
                    }
                }
                let x = weyl::phi(&cat, w, &tuple)?;
                Ok((io::collection_json(&cat, &x), None))
            }
            DirectionArg::ConfigToNc => {
                let w = weyl.as_ref().expect("weyl group built");
                let x = io::parse_collection(&cat, v)?;
                let tuple = weyl::phi_inverse(&cat, w, &x, m_for_nc.expect("checked above"))?;
                Ok((nc_json(w, &tuple)?, None))
            }
            DirectionArg::SiltingToNc => {
                let w = weyl.as_ref().expect("weyl group built");
                let x = io::parse_collection(&cat, v)?;
                let tr = silting::silting_to_config(&cat, &x)?;
                let tuple = weyl::phi_inverse(&cat, w, &tr.output, m_for_nc.expect("checked above"))?;
                Ok((nc_json(w, &tuple)?, trace.then(|| transport_trace(&cat, &tr))))
            }
        }
    };

    let mut ok = true;
    let mut out = Vec::with_capacity(records.len());
    for v in &records {
        let mut rec = json!({ "input": v });
        match one(v) {
            Ok((output, tr)) => {
                rec["output"] = output;
                if let Some(tr) = tr {
                    rec["trace"] = tr;
                }
            }
            Err(e) => {
                ok = false;
                rec["error"] = Value::String(format!("{e:#}"));
            }
        }
        out.push(rec);
    }
    io::emit(file, &(serde_json::to_string_pretty(&out)? + "\n"))?;
    Ok(ok)
}

pub fn nc(t: &TypeArgs, m: i32, count: bool, matrices: bool, file: Option<&Path>) -> anyhow::Result<bool> {
    let rs = prepare(t)?;
    let m = setup::require_m(m)?;
    let w = setup::weyl(&rs)?;
    if count {
        io::emit(file, &format!("{}\n", w.count_m_nc(m)))?;
        return Ok(true);
    }
    let all = w.enumerate_m_nc(m);
    eprintln!("{} {m}-noncrossing: {}", rs.dynkin_type(), all.len());
    let recs = all.iter().map(|t| t.to_record(&w, matrices)).collect::<Result<Vec<_>, _>>()?;
    io::emit(file, &(serde_json::to_string_pretty(&recs)? + "\n"))?;
    Ok(true)
}

pub fn riedtmann(t: &TypeArgs, check: bool, file: Option<&Path>) -> anyhow::Result<bool> {
    let rs = prepare(t)?;
    let cat = setup::category(rs)?;
    let configs = silting::enumerate(&cat, Kind::MConfigMinus, 1)?;
    let probe = riedtmann::default_probe_window();
    let mut ok = true;
    let mut out = Vec::with_capacity(configs.len());
    for x in &configs {
        let p = riedtmann::config_to_riedtmann(&cat, x)?;
        let mut rec = json!({
            "config": io::collection_json(&cat, x),
            "seeds": io::collection_json(&cat, p.seeds()),
        });
        if check {
            let combinatorial = riedtmann::check_combinatorial_configuration(&cat, &p, &probe);
            let back: anyhow::Result<DCollection> = riedtmann::riedtmann_to_config(&cat, &p).map_err(Into::into);
            let round_trip = matches!(&back, Ok(y) if y == x);
            ok &= combinatorial.is_ok() && round_trip;
            rec["combinatorial"] = json!(combinatorial.as_ref().map_err(|e| e.to_string()).err());
            rec["round_trip"] = json!(round_trip);
        }
        out.push(rec);
    }
    eprintln!("{} periodic configurations: {}", cat.root_system().dynkin_type(), configs.len());
    io::emit(file, &(serde_json::to_string_pretty(&out)? + "\n"))?;
    Ok(ok)
}

pub fn torsion(t: &TypeArgs, input: &Path, window: &str, file: Option<&Path>) -> anyhow::Result<bool> {
    let rs = prepare(t)?;
    let cat = setup::category(rs)?;
    let (lo, hi) = setup::parse_window(window)?;
    let w = WindowSpec::degrees(lo, hi);
    let records = io::collection_values(io::read_json(input)?)?;
    let mut ok = true;
    let mut out = Vec::with_capacity(records.len());
    for v in &records {
        let mut rec = json!({ "input": v });
        let res = io::parse_collection(&cat, v).and_then(|x| {
            let objects = DCollection::new(riedtmann::torsion_window(&cat, x.items(), &w))?;
            let tw = riedtmann::torsion_class(&cat, &x, MIN_MARGIN).context("ext-projectives")?;
            let proj = DCollection::new(riedtmann::ext_projectives(&cat, &tw)?)?;
            Ok((objects, proj))
        });
        match res {
            Ok((objects, proj)) => {
                rec["window"] = json!([lo, hi]);
                rec["objects"] = io::collection_json(&cat, &objects);
                rec["ext_projectives"] = io::collection_json(&cat, &proj);
            }
            Err(e) => {
                ok = false;
                rec["error"] = Value::String(format!("{e:#}"));
            }
        }
        out.push(rec);
    }
    io::emit(file, &(serde_json::to_string_pretty(&out)? + "\n"))?;
    Ok(ok)
}

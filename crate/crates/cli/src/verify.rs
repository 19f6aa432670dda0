//! The `verify` suite: count identities, bijection round trips and
//! mutation-calculus properties for one type and one `m`.

use std::collections::HashSet;

use exseq_core::exceptional::{self, Direction};
use exseq_core::silting::{self, Kind};
use exseq_core::weyl::{self, DEFAULT_GROUP_LIMIT};
use exseq_core::{DCollection, DerivedCategory, ExcSeq, MutationSign, NCTuple, RootSystem, Weyl};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;

use crate::report::RunReport;

/// Above this many complete exceptional sequences the mutation properties
/// are checked on a seeded random sample instead of all of them.
const EXHAUSTIVE_SEQUENCE_LIMIT: u128 = 50_000;
const SAMPLE_SIZE: usize = 2_000;

type Outcome = Result<(), (String, Value)>;

fn seq_json(cat: &DerivedCategory, s: &ExcSeq) -> Value {
    serde_json::to_value(s.to_records(cat)).expect("records serialize")
}

fn coll_json(cat: &DerivedCategory, x: &DCollection) -> Value {
    serde_json::to_value(x.to_records(cat)).expect("records serialize")
}

fn nc_json(w: &Weyl, t: &NCTuple) -> Value {
    t.to_record(w, false).map(|r| serde_json::to_value(r).expect("records serialize")).unwrap_or(Value::Null)
}

/// First failure over a parallel iterator, in input order.
fn first_failure<T: Sync>(items: &[T], f: impl Fn(&T) -> Outcome + Sync + Send) -> Outcome {
    match items.par_iter().map(f).find_first(|r| r.is_err()) {
        Some(e) => e,
        None => Ok(()),
    }
}

pub fn run(rs: &RootSystem, m: i32) -> anyhow::Result<RunReport> {
    let mut report = RunReport::new(&rs.dynkin_type().to_string(), Some(m));
    let weyl = Weyl::new(rs)?;
    let c_m = rs.fuss_catalan(i64::from(m))? as u128;
    let c_plus = rs.positive_fuss_catalan(i64::from(m))? as u128;

    group_checks(&mut report, &weyl);
    let nc = weyl.enumerate_m_nc(m as usize);
    report.count("m-noncrossing", nc.len() as u128, c_m);
    let bad = nc.iter().find(|t| !weyl.is_nc_tuple(t));
    report.outcome(
        "noncrossing tuples are T-reduced factorizations of c",
        bad.map_or(Ok(()), |t| Err(("not T-reduced".into(), nc_json(&weyl, t)))),
    );

    if !rs.is_simply_laced() {
        return Ok(report.finish());
    }
    let cat = DerivedCategory::new(rs.clone())?;

    let ct = silting::enumerate(&cat, Kind::MClusterTilting, m)?;
    let cf = silting::enumerate(&cat, Kind::MConfig, m)?;
    report.count("m-cluster-tilting", ct.len() as u128, c_m);
    report.count("m-config", cf.len() as u128, c_m);
    let pos_s = silting::enumerate(&cat, Kind::SiltingDeg1Window, m)?;
    let pos_c = silting::enumerate(&cat, Kind::MConfigMinus, m)?;
    report.count("silting-deg1-window", pos_s.len() as u128, c_plus);
    report.count("m-config-minus", pos_c.len() as u128, c_plus);

    let configs: HashSet<&DCollection> = cf.iter().collect();
    let minus: HashSet<&DCollection> = pos_c.iter().collect();
    let pos_silting: HashSet<&DCollection> = pos_s.iter().collect();
    report.outcome(
        "silting-to-config maps m-cluster-tilting onto m-config, inverse round trip, signs",
        first_failure(&ct, |x| {
            let fail = |msg: String| Err((msg, coll_json(&cat, x)));
            let fwd = match silting::silting_to_config(&cat, x) {
                Ok(t) => t,
                Err(e) => return fail(e.to_string()),
            };
            if !fwd.run.signs().all(MutationSign::is_negative_or_orthogonal) {
                return fail("non-negative step in silting-to-config".into());
            }
            if !configs.contains(&fwd.output) {
                return fail(format!("image {} is not an m-configuration", fwd.output.show(&cat)));
            }
            if pos_silting.contains(x) != minus.contains(&fwd.output) {
                return fail("positive window not matched with the minus window".into());
            }
            match silting::config_to_silting(&cat, &fwd.output) {
                Ok(back) if back.output == *x => {
                    if back.run.signs().all(MutationSign::is_nonnegative_or_orthogonal) {
                        Ok(())
                    } else {
                        fail("negative step in config-to-silting".into())
                    }
                }
                Ok(back) => fail(format!("round trip gave {}", back.output.show(&cat))),
                Err(e) => fail(e.to_string()),
            }
        }),
    );
    let images: HashSet<DCollection> =
        ct.par_iter().filter_map(|x| silting::silting_to_config(&cat, x).ok().map(|t| t.output)).collect();
    report.outcome(
        "silting-to-config is onto m-config",
        cf.iter()
            .find(|y| !images.contains(*y))
            .map_or(Ok(()), |y| Err(("configuration not in the image".into(), coll_json(&cat, y)))),
    );

    report.outcome(
        "phi and phi-inverse are mutually inverse",
        first_failure(&nc, |t| {
            let fail = |msg: String| Err((msg, nc_json(&weyl, t)));
            let x = match weyl::phi(&cat, &weyl, t) {
                Ok(x) => x,
                Err(e) => return fail(e.to_string()),
            };
            if !configs.contains(&x) {
                return fail(format!("phi gave {}, not an m-configuration", x.show(&cat)));
            }
            match weyl::phi_inverse(&cat, &weyl, &x, m as usize) {
                Ok(back) if back == *t => Ok(()),
                Ok(_) => fail("phi-inverse does not return the tuple".into()),
                Err(e) => fail(e.to_string()),
            }
        }),
    );

    mutation_checks(&mut report, &cat, &weyl);
    Ok(report.finish())
}

fn group_checks(report: &mut RunReport, weyl: &Weyl) {
    let c = weyl.coxeter_element();
    let n = weyl.rank();
    let h = weyl.root_system().coxeter_number() as usize;
    if weyl.abs_length(c) == n && c.order() == h {
        report.ok("Coxeter element has absolute length n and order h");
    } else {
        report.fail(
            "Coxeter element has absolute length n and order h",
            format!("length {}, order {}", weyl.abs_length(c), c.order()),
            None,
        );
    }
    if weyl.group_order() <= DEFAULT_GROUP_LIMIT {
        match weyl.elements(DEFAULT_GROUP_LIMIT) {
            Ok(all) => {
                report.count("group order", all.len() as u128, weyl.group_order());
            }
            Err(e) => report.fail("group order", e.to_string(), None),
        }
    }
}

/// Complete exceptional sequences to test: all of them, or a random walk
/// sample for large types.
fn test_sequences(cat: &DerivedCategory, weyl: &Weyl) -> Vec<ExcSeq> {
    let n = cat.rank() as u128;
    let h = cat.root_system().coxeter_number() as u128;
    let total = (1..=n).product::<u128>() * h.pow(n as u32) / weyl.group_order();
    if total <= EXHAUSTIVE_SEQUENCE_LIMIT {
        return exceptional::enumerate_complete_sequences(cat);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut cur = ExcSeq::new((0..cat.rank()).map(|i| cat.simple(i)).collect());
    let mut out = Vec::with_capacity(SAMPLE_SIZE);
    let dirs = [Direction::Right, Direction::Left];
    while out.len() < SAMPLE_SIZE {
        for _ in 0..4 {
            let i = rng.gen_range(0..cat.rank() - 1);
            let dir = *dirs.choose(&mut rng).expect("nonempty");
            cur = exceptional::mutate(cat, &cur, i, dir).expect("mutation of an exceptional sequence").0;
        }
        out.push(cur.map(|x| x.module()));
    }
    out
}

fn mutation_checks(report: &mut RunReport, cat: &DerivedCategory, weyl: &Weyl) {
    let n = cat.rank();
    let seqs = test_sequences(cat, weyl);
    if n < 2 {
        report.ok("mutation properties (rank 1, nothing to mutate)");
        return;
    }
    report.outcome(
        "inverse law, K0 reflection identity, and neighbouring terms",
        first_failure(&seqs, |s| {
            let fail = |msg: String| Err((msg, seq_json(cat, s)));
            for i in 0..n - 1 {
                for dir in [Direction::Right, Direction::Left] {
                    let back = match dir {
                        Direction::Right => Direction::Left,
                        Direction::Left => Direction::Right,
                    };
                    let step =
                        exceptional::mutate_step(cat, s, i, dir).map_err(|e| (e.to_string(), seq_json(cat, s)))?;
                    let (undo, _) = exceptional::mutate(cat, &step.after, i, back)
                        .map_err(|e| (e.to_string(), seq_json(cat, s)))?;
                    if undo != *s {
                        return fail(format!("{dir:?} mutation at {i} is not undone"));
                    }
                    let untouched =
                        (0..n).filter(|&k| k != i && k != i + 1).all(|k| step.after.items()[k] == s.items()[k]);
                    if !untouched {
                        return fail(format!("mutation at {i} changed other positions"));
                    }
                    if dir == Direction::Right {
                        let (a, b) = (s.items()[i], s.items()[i + 1]);
                        let star = step.after.items()[i + 1];
                        let want =
                            cat.root_system().reflect(&cat.class_of(b), &cat.class_of(a)).expect("roots reflect");
                        if cat.class_of(star) != want {
                            return fail(format!("[A*] != t_[B][A] at {i}"));
                        }
                    }
                }
            }
            Ok(())
        }),
    );
    report.outcome(
        "braid relations",
        first_failure(&seqs, |s| {
            let apply = |pos: &[usize]| {
                exceptional::apply_mutations(cat, s, pos, Direction::Right)
                    .map(|r| r.seq)
                    .map_err(|e| (e.to_string(), seq_json(cat, s)))
            };
            for i in 0..n - 1 {
                if i + 2 < n && apply(&[i, i + 1, i])? != apply(&[i + 1, i, i + 1])? {
                    return Err((format!("braid relation fails at {i}"), seq_json(cat, s)));
                }
                for j in i + 2..n - 1 {
                    if apply(&[i, j])? != apply(&[j, i])? {
                        return Err((format!("far commutation fails at {i}, {j}"), seq_json(cat, s)));
                    }
                }
            }
            Ok(())
        }),
    );
    report.outcome(
        "rotation, reversal twice equals inverse Serre functor, both reversal presentations agree",
        first_failure(&seqs, |s| {
            let fail = |msg: String| Err((msg, seq_json(cat, s)));
            if let Err(e) = exceptional::rotate(cat, s) {
                return fail(e.to_string());
            }
            let once = exceptional::mu_rev(cat, s).map_err(|e| (e.to_string(), seq_json(cat, s)))?;
            let alt = exceptional::mu_rev_alt(cat, s).map_err(|e| (e.to_string(), seq_json(cat, s)))?;
            if once.seq != alt.seq {
                return fail("the two presentations of the reversal differ".into());
            }
            let twice = exceptional::mu_rev(cat, &once.seq).map_err(|e| (e.to_string(), seq_json(cat, s)))?;
            if twice.seq != s.map(|x| cat.nu_inv(x)) {
                return fail("reversal applied twice is not the inverse Serre functor".into());
            }
            let back = exceptional::mu_rev_inverse(cat, &once.seq).map_err(|e| (e.to_string(), seq_json(cat, s)))?;
            if back.seq != *s {
                return fail("inverse reversal does not undo the reversal".into());
            }
            Ok(())
        }),
    );
    report.outcome(
        "product of reflections over complete exceptional sequences is c",
        first_failure(&seqs, |s| {
            let p = s.items().iter().fold(weyl.identity(), |acc, &x| acc.mul(weyl::reflection_of_object(weyl, x)));
            if p == *weyl.coxeter_element() {
                Ok(())
            } else {
                Err(("product differs from c".into(), seq_json(cat, s)))
            }
        }),
    );
}

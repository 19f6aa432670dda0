//! Acceptance suite: one PASS/FAIL line per criterion. All tolerances are
//! exact (integer counts and equalities); the process exits nonzero if any
//! criterion fails.

mod common;

use std::collections::HashSet;
use std::time::Instant;

use common::{MatrixOracle, OracleTables};
use exseq_core::exceptional::{self, Direction, MutationRun, MutationStep};
use exseq_core::riedtmann::{self, MIN_MARGIN};
use exseq_core::silting::{self, Kind};
use exseq_core::weyl::{self, NCTuple};
use exseq_core::{DCollection, DObj, DerivedCategory, ExcSeq, MutationSign, RootSystem, Weyl, WindowSpec};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random exceptional sequences per type for the mutation properties.
const RANDOM_SEQUENCES: usize = 10_000;
/// Degree window the random sequences are drawn from.
const RANDOM_DEGREES: (i32, i32) = (-1, 3);
const SEED: u64 = 0x5eed_acce;

type Outcome = Result<String, String>;

struct Ctx {
    rs: RootSystem,
    cat: DerivedCategory,
    weyl: Weyl,
}

fn ctx(t: &str) -> Ctx {
    let rs = RootSystem::of_type(t.parse().unwrap()).unwrap();
    let cat = DerivedCategory::new(rs.clone()).unwrap();
    let weyl = Weyl::new(&rs).unwrap();
    Ctx { rs, cat, weyl }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `[A*] = t_[B][A]` for a right step, `[B!] = t_[A][B]` for a left one.
fn k0_identity(cat: &DerivedCategory, st: &MutationStep) -> Result<(), String> {
    let (a, b) = st.before;
    let rs = cat.root_system();
    let (moved, fixed, new) = match st.dir {
        Direction::Right => (a, b, st.after.items()[st.pos + 1]),
        Direction::Left => (b, a, st.after.items()[st.pos]),
    };
    let want = rs.reflect(&cat.class_of(fixed), &cat.class_of(moved)).map_err(|e| e.to_string())?;
    ensure(cat.class_of(new) == want, || {
        format!("K0 identity fails for {:?} mutation of ({}, {})", st.dir, cat.show(a), cat.show(b))
    })
}

fn k0_run(cat: &DerivedCategory, run: &MutationRun, executed: &mut usize) -> Result<(), String> {
    for st in &run.steps {
        k0_identity(cat, st)?;
        *executed += 1;
    }
    Ok(())
}

fn counts_for(t: &str, m: i32, expected: u128) -> Result<(), String> {
    let c = ctx(t);
    let formula = c.rs.fuss_catalan(i64::from(m)).map_err(|e| e.to_string())? as u128;
    let ct = silting::enumerate(&c.cat, Kind::MClusterTilting, m).map_err(|e| e.to_string())?.len() as u128;
    let cf = silting::enumerate(&c.cat, Kind::MConfig, m).map_err(|e| e.to_string())?.len() as u128;
    let nc = c.weyl.enumerate_m_nc(m as usize).len() as u128;
    let dp = c.weyl.count_m_nc(m as usize);
    ensure([formula, ct, cf, nc, dp].iter().all(|&x| x == expected), || {
        format!(
            "{t} m={m}: formula {formula}, cluster-tilting {ct}, configs {cf}, noncrossing {nc}/{dp}, want {expected}"
        )
    })
}

const CRITERION_ONE: [(&str, i32, u128); 7] =
    [("A2", 1, 5), ("A2", 2, 12), ("A2", 3, 22), ("A3", 1, 14), ("A3", 2, 55), ("D4", 1, 50), ("D4", 2, 336)];

fn criterion_1() -> Outcome {
    for (t, m, want) in CRITERION_ONE {
        counts_for(t, m, want)?;
    }
    Ok("A2 m=1..3, A3 and D4 m=1,2: all four counts equal C_m".into())
}

fn criterion_2() -> Outcome {
    for (t, m, want) in [("A2", 1, 2u128), ("A2", 2, 7), ("A3", 1, 5)] {
        let c = ctx(t);
        let pos = silting::enumerate(&c.cat, Kind::SiltingDeg1Window, m).map_err(|e| e.to_string())?.len() as u128;
        let minus = silting::enumerate(&c.cat, Kind::MConfigMinus, m).map_err(|e| e.to_string())?.len() as u128;
        let formula = c.rs.positive_fuss_catalan(i64::from(m)).map_err(|e| e.to_string())? as u128;
        let neg = c.rs.fuss_catalan(-i64::from(m) - 1).map_err(|e| e.to_string())?.unsigned_abs();
        ensure(pos == want && minus == want && formula == want && neg == want, || {
            format!("{t} m={m}: silting {pos}, minus configs {minus}, formula {formula}/{neg}, want {want}")
        })?;
    }
    Ok("A2 m=1 -> 2, A2 m=2 -> 7, A3 m=1 -> 5".into())
}

fn criterion_3() -> Outcome {
    let mut pairs = 0usize;
    for (t, m, _) in CRITERION_ONE {
        let c = ctx(t);
        let ct = silting::enumerate(&c.cat, Kind::MClusterTilting, m).unwrap();
        let cf = silting::enumerate(&c.cat, Kind::MConfig, m).unwrap();
        let configs: HashSet<&DCollection> = cf.iter().collect();
        let mut image = HashSet::new();
        for x in &ct {
            let y =
                silting::silting_to_config(&c.cat, x).map_err(|e| format!("{t} m={m} {}: {e}", x.show(&c.cat)))?.output;
            ensure(configs.contains(&y), || format!("{t} m={m}: image {} is not an m-configuration", y.show(&c.cat)))?;
            let back = silting::config_to_silting(&c.cat, &y).map_err(|e| e.to_string())?.output;
            ensure(back == *x, || format!("{t} m={m}: {} does not round trip", x.show(&c.cat)))?;
            image.insert(y);
            pairs += 1;
        }
        ensure(image.len() == cf.len(), || format!("{t} m={m}: silting-to-config is not onto"))?;
        for y in &cf {
            let x = silting::config_to_silting(&c.cat, y).map_err(|e| e.to_string())?.output;
            ensure(silting::silting_to_config(&c.cat, &x).map_err(|e| e.to_string())?.output == *y, || {
                format!("{t} m={m}: {} does not round trip", y.show(&c.cat))
            })?;
        }
        let nc = c.weyl.enumerate_m_nc(m as usize);
        let mut phi_image = HashSet::new();
        for u in &nc {
            let y = weyl::phi(&c.cat, &c.weyl, u).map_err(|e| e.to_string())?;
            ensure(configs.contains(&y), || format!("{t} m={m}: phi gave {}", y.show(&c.cat)))?;
            let back: NCTuple = weyl::phi_inverse(&c.cat, &c.weyl, &y, m as usize).map_err(|e| e.to_string())?;
            ensure(back == *u, || format!("{t} m={m}: phi-inverse does not undo phi"))?;
            phi_image.insert(y);
            pairs += 1;
        }
        ensure(phi_image.len() == cf.len(), || format!("{t} m={m}: phi is not onto"))?;
    }
    Ok(format!("{pairs} round trips, both maps bijective on every set"))
}

/// Complete module sequences shifted termwise into random degrees.
fn random_sequences(cat: &DerivedCategory, count: usize, rng: &mut ChaCha8Rng) -> Vec<ExcSeq> {
    let base = exceptional::enumerate_complete_sequences(cat);
    (0..count)
        .map(|_| {
            let s = base.choose(rng).unwrap();
            ExcSeq::new(s.items().iter().map(|x| x.shift(rng.gen_range(RANDOM_DEGREES.0..=RANDOM_DEGREES.1))).collect())
        })
        .collect()
}

fn mutation_properties(cat: &DerivedCategory, s: &ExcSeq, executed: &mut usize) -> Result<(), String> {
    let n = s.len();
    let err = |e: exseq_core::Error| format!("{}: {e}", s.show(cat));
    ensure(exceptional::is_exceptional(cat, s.items()), || format!("{} is not exceptional", s.show(cat)))?;
    for i in 0..n - 1 {
        for (dir, back) in [(Direction::Right, Direction::Left), (Direction::Left, Direction::Right)] {
            let st = exceptional::mutate_step(cat, s, i, dir).map_err(err)?;
            k0_identity(cat, &st)?;
            *executed += 1;
            let undo = exceptional::mutate_step(cat, &st.after, i, back).map_err(err)?;
            k0_identity(cat, &undo)?;
            *executed += 1;
            ensure(undo.after == *s, || format!("{}: {dir:?} mutation at {i} is not undone", s.show(cat)))?;
            ensure((0..n).filter(|&k| k != i && k != i + 1).all(|k| st.after.items()[k] == s.items()[k]), || {
                format!("{}: mutation at {i} moved other terms", s.show(cat))
            })?;
        }
    }
    let apply = |pos: &[usize], executed: &mut usize| -> Result<ExcSeq, String> {
        let run = exceptional::apply_mutations(cat, s, pos, Direction::Right).map_err(err)?;
        k0_run(cat, &run, executed)?;
        Ok(run.seq)
    };
    for i in 0..n - 1 {
        if i + 2 < n {
            ensure(apply(&[i, i + 1, i], executed)? == apply(&[i + 1, i, i + 1], executed)?, || {
                format!("{}: braid relation at {i}", s.show(cat))
            })?;
            // (A, B, C) -> (C, A*, B*) keeps Ext^*(A, B).
            let r = apply(&[i + 1, i], executed)?;
            let (a, b) = (s.items()[i], s.items()[i + 1]);
            let (a2, b2) = (r.items()[i + 1], r.items()[i + 2]);
            ensure(r.items()[i] == s.items()[i + 2], || format!("{}: double mutation at {i}", s.show(cat)))?;
            for t in -6..=6 {
                ensure(cat.ext_dim(a, b, t) == cat.ext_dim(a2, b2, t), || {
                    format!("{}: Ext^{t} not preserved at {i}", s.show(cat))
                })?;
            }
        }
        for j in i + 2..n - 1 {
            ensure(apply(&[i, j], executed)? == apply(&[j, i], executed)?, || {
                format!("{}: far commutation at {i}, {j}", s.show(cat))
            })?;
        }
    }
    exceptional::rotate(cat, s).map_err(err)?;
    let once = exceptional::mu_rev(cat, s).map_err(err)?;
    k0_run(cat, &once, executed)?;
    let alt = exceptional::mu_rev_alt(cat, s).map_err(err)?;
    ensure(once.seq == alt.seq, || format!("{}: reversal presentations differ", s.show(cat)))?;
    let twice = exceptional::mu_rev(cat, &once.seq).map_err(err)?;
    k0_run(cat, &twice, executed)?;
    ensure(twice.seq == s.map(|x| cat.nu_inv(x)), || {
        format!("{}: reversal twice is not the inverse Serre functor", s.show(cat))
    })
}

fn criterion_4_and_5() -> (Outcome, Outcome) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut executed = 0usize;
    let mut tested = 0usize;
    let mut run = || -> Result<(), String> {
        let a3 = ctx("A3");
        let all = exceptional::enumerate_complete_sequences(&a3.cat);
        ensure(all.len() == 16, || format!("A3 has {} complete sequences", all.len()))?;
        for s in &all {
            mutation_properties(&a3.cat, s, &mut executed)?;
            tested += 1;
        }
        for t in ["A3", "D4"] {
            let c = ctx(t);
            for s in random_sequences(&c.cat, RANDOM_SEQUENCES, &mut rng) {
                mutation_properties(&c.cat, &s, &mut executed)?;
                tested += 1;
            }
        }
        Ok(())
    };
    let c4 = run().map(|_| {
        format!("{tested} sequences (all 16 A3 modules, {RANDOM_SEQUENCES} random each in A3, D4, degrees {}..={}), 0 failures", RANDOM_DEGREES.0, RANDOM_DEGREES.1)
    });

    let mut products = 0usize;
    let mut run5 = || -> Result<(), String> {
        for t in ["A2", "A3", "D4"] {
            let c = ctx(t);
            for s in exceptional::enumerate_complete_sequences(&c.cat) {
                let p =
                    s.items().iter().fold(c.weyl.identity(), |acc, &x| acc.mul(weyl::reflection_of_object(&c.weyl, x)));
                ensure(p == *c.weyl.coxeter_element(), || format!("{t}: product over {} is not c", s.show(&c.cat)))?;
                products += 1;
            }
        }
        for (t, m, _) in CRITERION_ONE {
            let c = ctx(t);
            for x in silting::enumerate(&c.cat, Kind::MClusterTilting, m).unwrap() {
                let fwd = silting::silting_to_config(&c.cat, &x).map_err(|e| e.to_string())?;
                k0_run(&c.cat, &fwd.run, &mut executed)?;
                let back = silting::config_to_silting(&c.cat, &fwd.output).map_err(|e| e.to_string())?;
                k0_run(&c.cat, &back.run, &mut executed)?;
            }
        }
        Ok(())
    };
    let c5 = match (&c4, run5()) {
        (Err(e), _) => Err(format!("K0 identity checked inside the mutation properties: {e}")),
        (Ok(_), Err(e)) => Err(e),
        (Ok(_), Ok(())) => Ok(format!(
            "K0 identity on {executed} executed mutations; product of reflections is c on all {products} complete sequences of A2, A3, D4"
        )),
    };
    (c4, c5)
}

fn criterion_6() -> Outcome {
    for (t, want) in [("A2", 3usize), ("A3", 16), ("D4", 162)] {
        let c = ctx(t);
        let brute = OracleTables::new(&MatrixOracle::for_category(&c.cat, 3)).count_complete_sequences(c.cat.rank());
        let ours = exceptional::enumerate_complete_sequences(&c.cat).len();
        ensure(brute == want && ours == want, || format!("{t}: library {ours}, brute force {brute}, want {want}"))?;
    }
    Ok("A2 3, A3 16, D4 162 (library and brute force)".into())
}

fn criterion_7() -> Outcome {
    let mut pairs = 0usize;
    for t in ["A2", "A3"] {
        let c = ctx(t);
        let oracle = MatrixOracle::for_category(&c.cat, 7);
        for a in 0..c.cat.num_roots() {
            for b in 0..c.cat.num_roots() {
                for d in -2..=2 {
                    let (x, y) = (DObj::new(a, 0), DObj::new(b, d));
                    ensure(c.cat.hom_dim(x, y) == oracle.derived_hom(x, y), || {
                        format!("{t}: Hom({}, {})", c.cat.show(x), c.cat.show(y))
                    })?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} (pair, degree difference) cases agree"))
}

fn criterion_8() -> Outcome {
    let mut runs = 0usize;
    for (t, m, _) in CRITERION_ONE {
        let c = ctx(t);
        for x in silting::enumerate(&c.cat, Kind::MClusterTilting, m).unwrap() {
            let fwd = silting::silting_to_config(&c.cat, &x).map_err(|e| e.to_string())?;
            ensure(fwd.run.signs().all(MutationSign::is_negative_or_orthogonal), || {
                format!("{t} m={m}: non-negative step from {}", x.show(&c.cat))
            })?;
            runs += 1;
        }
        for y in silting::enumerate(&c.cat, Kind::MConfig, m).unwrap() {
            let back = silting::config_to_silting(&c.cat, &y).map_err(|e| e.to_string())?;
            ensure(back.run.signs().all(MutationSign::is_nonnegative_or_orthogonal), || {
                format!("{t} m={m}: negative step from {}", y.show(&c.cat))
            })?;
            runs += 1;
        }
    }
    Ok(format!("{runs} runs, all signs as required"))
}

fn criterion_9() -> Outcome {
    let probe = riedtmann::default_probe_window();
    let mut parts = Vec::new();
    for (t, want) in [("A2", 2usize), ("A3", 5), ("D4", 20)] {
        let c = ctx(t);
        let configs = silting::enumerate(&c.cat, Kind::MConfigMinus, 1).unwrap();
        let mut seen = HashSet::new();
        for x in &configs {
            let p = riedtmann::config_to_riedtmann(&c.cat, x).map_err(|e| format!("{t}: {e}"))?;
            riedtmann::check_combinatorial_configuration(&c.cat, &p, &probe).map_err(|e| format!("{t}: {e}"))?;
            let back = riedtmann::riedtmann_to_config(&c.cat, &p).map_err(|e| format!("{t}: {e}"))?;
            ensure(back == *x, || format!("{t}: {} does not round trip", x.show(&c.cat)))?;
            seen.insert(p.seeds().clone());
        }
        let tilting = OracleTables::new(&MatrixOracle::for_category(&c.cat, 5)).tilting_modules(c.cat.rank()).len();
        ensure(configs.len() == want && seen.len() == want && tilting == want, || {
            format!("{t}: configs {}, periodic {}, tilting modules {tilting}, want {want}", configs.len(), seen.len())
        })?;
        parts.push(format!("{t} {want}"));
    }
    Ok(format!("round trips exact; tilting modules = periodic configurations: {}", parts.join(", ")))
}

fn criterion_10() -> Outcome {
    let mut mutations = 0usize;
    let mut objects = 0usize;
    for t in ["A2", "A3"] {
        let c = ctx(t);
        for m in 1..=2 {
            let w = WindowSpec::degrees(-2, m + 3);
            let ct = silting::enumerate(&c.cat, Kind::MClusterTilting, m).unwrap();
            let mut classes = HashSet::new();
            for y in &ct {
                let fwd = silting::silting_to_config(&c.cat, y).map_err(|e| e.to_string())?;
                let mut prev = fwd.ordered.clone();
                for st in &fwd.run.steps {
                    let same = riedtmann::check_negative_mutation_invariance(&c.cat, &prev, st.pos, &w)
                        .map_err(|e| format!("{t} m={m}: {e}"))?;
                    ensure(same, || format!("{t} m={m}: A(-) changes along the run from {}", y.show(&c.cat)))?;
                    prev = st.after.clone();
                    mutations += 1;
                }
                classes.insert(riedtmann::torsion_window(&c.cat, y.items(), &w));
                let tw = riedtmann::torsion_class(&c.cat, y, MIN_MARGIN).map_err(|e| e.to_string())?;
                let proj = riedtmann::ext_projectives(&c.cat, &tw).map_err(|e| e.to_string())?;
                ensure(DCollection::new(proj).ok().as_ref() == Some(y), || {
                    format!("{t} m={m}: Ext-projectives do not recover {}", y.show(&c.cat))
                })?;
                objects += 1;
            }
            ensure(classes.len() == ct.len(), || format!("{t} m={m}: two silting objects share a torsion class"))?;
        }
    }
    Ok(format!("{mutations} negative mutations keep A(-); {objects} silting objects give distinct classes"))
}

fn main() {
    let start = Instant::now();
    let (c4, c5) = criterion_4_and_5();
    let results: Vec<(usize, &str, Outcome)> = vec![
        (1, "count agreement", criterion_1()),
        (2, "positive counts", criterion_2()),
        (3, "bijection round trips", criterion_3()),
        (4, "mutation calculus", c4),
        (5, "K0/Weyl compatibility", c5),
        (6, "complete exceptional sequence counts", criterion_6()),
        (7, "Hom oracle equivalence", criterion_7()),
        (8, "mutation signs", criterion_8()),
        (9, "periodic configurations", criterion_9()),
        (10, "torsion classes", criterion_10()),
    ];
    let mut failed = 0;
    for (k, name, r) in &results {
        match r {
            Ok(detail) => println!("PASS criterion {k:>2} {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {k:>2} {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed in {:.1}s", results.len() - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}

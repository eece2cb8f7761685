//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits nonzero if
//! any criterion fails. Reports are read from the `subdepth` binary's JSON output
//! wherever the criterion concerns the command line.

#![allow(clippy::int_plus_one)]

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

use subdepth::cartan::{from_semisimple_pair, necessary_condition, triangular_example, validate};
use subdepth::classfn::{induce, inner_product, restrict};
use subdepth::depth::{induction_restriction_matrix, min_depth, satisfies_depth};
use subdepth::double::adjoint_character;
use subdepth::moddepth::module_depth;
use subdepth::{
    Builtin, CharacterTable, ClassFunction, Cyclotomic, Parity, PermutationGroup,
    SubgroupEmbedding, TableSource, DEFAULT_ORDER_CAP,
};
use subdepth_cli::cache::CachedTables;
use subdepth_cli::Context;

/// Wall-clock limit for `depth S(6) S(5)`.
const SYMMETRIC_CHAIN_LIMIT: Duration = Duration::from_secs(60);
const MIN_CATALOG_SIZE: usize = 20;
const FROBENIUS_PAIRS_PER_EMBEDDING: usize = 100;
const FROBENIUS_SEED: u64 = 0x5eed_0108;
/// Coefficient range for random virtual characters.
const COEFFICIENT_BOUND: i64 = 4;
const TRIANGULAR_SIZES: std::ops::RangeInclusive<usize> = 1..=12;
const TRIANGULAR_TRUE_DEPTH: &str = "3";
/// Thread counts of the two determinism passes.
const DETERMINISM_THREADS: [&str; 2] = ["1", "6"];

const CATALOG: &[(&str, &str)] = &[
    ("S(4)", "perm(4;)"),
    ("S(4)", "perm(4; (1 2))"),
    ("S(4)", "perm(4; (1 2)(3 4))"),
    ("S(4)", "perm(4; (1 2 3))"),
    ("S(4)", "Klein"),
    ("S(4)", "perm(4; (1 2), (3 4))"),
    ("S(4)", "perm(4; (1 2 3 4))"),
    ("S(4)", "S(3)"),
    ("S(4)", "D(8)"),
    ("S(4)", "A(4)"),
    ("S(4)", "S(4)"),
    ("S(5)", "S(4)"),
    ("S(5)", "A(5)"),
    ("S(5)", "perm(5; (1 2 3), (1 2)(3 4))"),
    ("S(5)", "perm(5; (1 2 3 4 5), (2 5)(3 4))"),
    ("S(5)", "perm(5; (1 2 3 4 5), (2 3 5 4))"),
    ("S(5)", "perm(5; (1 2 3 4 5))"),
    ("S(5)", "perm(5; (1 2), (1 2 3), (4 5))"),
    ("S(3)", "perm(3; (1 2))"),
    ("S(3)", "A(3)"),
    ("A(5)", "perm(5; (1 2 3), (1 2)(3 4))"),
    ("D(8)", "perm(4; (1 2 3 4))"),
    ("D(8)", "perm(4; (1 3))"),
];

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Run {
    code: Option<i32>,
    stdout: Vec<u8>,
    stderr: String,
}

fn subdepth(args: &[&str], threads: &str, cache: Option<&Path>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_subdepth"));
    cmd.env("RAYON_NUM_THREADS", threads);
    match cache {
        Some(dir) => cmd.arg("--cache-dir").arg(dir),
        None => cmd.arg("--no-cache"),
    };
    let out = cmd.arg("--format").arg("json").args(args).output().unwrap();
    Run {
        code: out.status.code(),
        stdout: out.stdout,
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

fn json(args: &[&str]) -> Result<Value, String> {
    let run = subdepth(args, "2", None);
    if run.code != Some(0) {
        return Err(format!(
            "{args:?} exited {:?}: {}",
            run.code,
            run.stderr.trim()
        ));
    }
    serde_json::from_slice(&run.stdout).map_err(|e| format!("{args:?}: {e}"))
}

fn uint(v: &Value) -> u64 {
    v.as_u64()
        .unwrap_or_else(|| panic!("expected an integer, found {v}"))
}

fn matrix(v: &Value) -> Vec<Vec<u64>> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(uint).collect())
        .collect()
}

fn context() -> Context {
    Context {
        tables: CachedTables::new(None),
        certificate: false,
        order_cap: DEFAULT_ORDER_CAP,
    }
}

fn embeddings(ctx: &Context) -> Vec<(String, SubgroupEmbedding)> {
    CATALOG
        .iter()
        .map(|(g, h)| (format!("{h} < {g}"), ctx.embedding(g, h).unwrap()))
        .collect()
}

/// Distinct group specs appearing in the catalog.
fn catalog_groups() -> Vec<&'static str> {
    let mut out: Vec<&str> = Vec::new();
    for (g, h) in CATALOG {
        for s in [*g, *h] {
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

fn symmetric_chain() -> Check {
    let mut found = Vec::new();
    for n in 2..=5u64 {
        let start = Instant::now();
        let v = json(&["depth", &format!("S({})", n + 1), &format!("S({n})")])?;
        let elapsed = start.elapsed();
        let d = uint(&v["report"]["d"]);
        ensure(d == 2 * n - 1, || format!("S({n}) < S({}): d = {d}", n + 1))?;
        if n == 5 {
            ensure(elapsed <= SYMMETRIC_CHAIN_LIMIT, || {
                format!("n = 5 took {elapsed:?}")
            })?;
        }
        found.push(d.to_string());
    }
    Ok(format!("d = {} for n = 2..5", found.join(", ")))
}

fn dihedral_in_s4() -> Check {
    let v = json(&["corefree", "S(4)", "D(8)"])?;
    let (d, dq, common) = (uint(&v["d"]), uint(&v["d_quotient"]), uint(&v["common_d"]));
    ensure(d == 4 && dq == 3, || {
        format!("d = {d}, quotient depth = {dq}")
    })?;
    ensure(uint(&v["core"]["order"]) == 4, || {
        "core order is not 4".into()
    })?;
    let emb = context().embedding("S(4)", "D(8)").unwrap();
    let klein = Builtin::Klein.build(DEFAULT_ORDER_CAP).unwrap();
    ensure(emb.core().same_as(&klein), || {
        "core is not the Klein group".into()
    })?;
    ensure(
        v["inequality_holds"] == true && v["interval_holds"] == true,
        || {
            format!(
                "inequality {} interval {}",
                v["inequality_holds"], v["interval_holds"]
            )
        },
    )?;
    ensure(common == 1, || format!("common d = {common}"))?;
    Ok(format!(
        "d = {d}, core = Klein, d(G/N, H/N) = {dq}, common d = {common}"
    ))
}

fn symmetric_doubles() -> Check {
    for n in 3..=6 {
        let v = json(&["double", &format!("S({n})")])?;
        ensure(v["ell_q"] == 1 && v["d_double"]["exact"] == 3, || {
            format!("S({n}): ell_Q = {}, d = {}", v["ell_q"], v["d_double"])
        })?;
    }
    Ok("ell_Q = 1, d = 3 for S(3)..S(6)".into())
}

fn order_108() -> Check {
    let v = json(&["double", "G108"])?;
    ensure(
        uint(&v["order"]) == 108 && uint(&v["classes"]) == 15,
        || format!("order {} with {} classes", v["order"], v["classes"]),
    )?;
    ensure(uint(&v["center_order"]) == 1, || {
        "center is nontrivial".into()
    })?;
    let s = matrix(&v["S"]);
    let zeros = s.iter().flatten().filter(|&&x| x == 0).count();
    ensure(zeros > 0, || "S has no zero entry".into())?;
    let r = s.len();
    let s2_positive = (0..r).all(|i| (0..r).all(|j| (0..r).any(|m| s[i][m] * s[m][j] > 0)));
    ensure(s2_positive, || "S^2 has a zero entry".into())?;
    ensure(v["ell_q"] == 2 && v["d_double"]["exact"] == 5, || {
        format!("ell_Q = {}, d = {}", v["ell_q"], v["d_double"])
    })?;
    Ok(format!(
        "15 classes, Z = 1, S has {zeros} zeros, S^2 > 0, ell_Q = 2, d = 5"
    ))
}

fn depth_reports() -> Result<Vec<(String, Value)>, String> {
    CATALOG
        .iter()
        .map(|(g, h)| Ok((format!("{h} < {g}"), json(&["depth", g, h])?)))
        .collect()
}

fn normality() -> Check {
    ensure(CATALOG.len() >= MIN_CATALOG_SIZE, || {
        "catalog too small".into()
    })?;
    let ctx = context();
    let embs = embeddings(&ctx);
    let mut normal_count = 0;
    for ((name, v), (_, emb)) in depth_reports()?.iter().zip(&embs) {
        let brute = emb.supergroup.elements().iter().all(|g| {
            emb.subgroup
                .elements()
                .iter()
                .all(|h| emb.subgroup.contains(&h.conjugate_by(g)))
        });
        let d = uint(&v["report"]["d"]);
        ensure(v["normal"] == brute, || {
            format!("{name}: normality flag wrong")
        })?;
        ensure((d <= 2) == brute, || {
            format!("{name}: d = {d}, normal = {brute}")
        })?;
        normal_count += usize::from(brute);
    }
    Ok(format!(
        "{} embeddings ({normal_count} normal), d <= 2 iff normal",
        CATALOG.len()
    ))
}

fn intervals() -> Check {
    for (name, v) in depth_reports()? {
        let d = uint(&v["report"]["d"]) as i64;
        let dq = uint(&v["dq"]) as i64;
        let dh = uint(&v["report"]["d_h"]) as i64;
        ensure(2 * dq + 1 <= d && d <= 2 * dq + 2, || {
            format!("{name}: d = {d}, dq = {dq}")
        })?;
        ensure(dh - 2 <= d && d <= dh + 1, || {
            format!("{name}: d = {d}, d_h = {dh}")
        })?;
    }
    Ok(format!(
        "both intervals hold on {} embeddings",
        CATALOG.len()
    ))
}

fn diagonal_oracle() -> Check {
    let mut diag = Vec::new();
    for spec in catalog_groups() {
        let v = json(&["double", spec])?;
        ensure(v["components"] == v["center_order"], || {
            format!(
                "{spec}: {} components, |Z| = {}",
                v["components"], v["center_order"]
            )
        })?;
        if v["centerless"] == true && uint(&v["order"]) > 1 {
            let l = uint(&v["ell_q"]);
            let dv = json(&["diag", spec])?;
            let d = uint(&dv["report"]["d"]);
            ensure(d == 2 * l + 1, || {
                format!("diag({spec}): d = {d}, ell_Q = {l}")
            })?;
            diag.push(spec);
        }
    }
    Ok(format!(
        "components = |Z| on {} groups; diagonal depth = 2 ell_Q + 1 for {}",
        catalog_groups().len(),
        diag.join(", ")
    ))
}

fn random_virtual_character(t: &CharacterTable, rng: &mut StdRng) -> ClassFunction {
    let e = t.conductor();
    let r = t.len();
    let coeffs: Vec<Cyclotomic> = (0..r)
        .map(|_| Cyclotomic::from_integer(e, rng.gen_range(-COEFFICIENT_BOUND..=COEFFICIENT_BOUND)))
        .collect();
    let values = (0..r)
        .map(|k| {
            (0..r).fold(Cyclotomic::zero(e), |acc, i| {
                &acc + &(&coeffs[i] * t.value(i, k))
            })
        })
        .collect();
    ClassFunction::new(t.group().clone(), values).unwrap()
}

fn table_integrity() -> Check {
    let ctx = context();
    for spec in catalog_groups() {
        let g = ctx.group(spec).unwrap();
        let t = ctx.tables.table(&g).map_err(|e| e.to_string())?;
        t.check_orthogonality()
            .map_err(|e| format!("{spec}: {e}"))?;
        let squares: u64 = t.degrees().iter().map(|d| d * d).sum();
        ensure(squares == g.order() as u64, || {
            format!("{spec}: sum of squares")
        })?;
    }
    let mut rng = StdRng::seed_from_u64(FROBENIUS_SEED);
    let embs = embeddings(&ctx);
    for (name, emb) in &embs {
        let tg = ctx.tables.table(&emb.supergroup).unwrap();
        let th = ctx.tables.table(&emb.subgroup).unwrap();
        for _ in 0..FROBENIUS_PAIRS_PER_EMBEDDING {
            let alpha = random_virtual_character(&th, &mut rng);
            let beta = random_virtual_character(&tg, &mut rng);
            let left = inner_product(&induce(&alpha, emb).unwrap(), &beta).unwrap();
            let right = inner_product(&alpha, &restrict(&beta, emb).unwrap()).unwrap();
            ensure(left == right, || format!("{name}: reciprocity fails"))?;
        }
    }
    Ok(format!(
        "orthogonality on {} groups; {} reciprocity pairs on each of {} embeddings",
        catalog_groups().len(),
        FROBENIUS_PAIRS_PER_EMBEDDING,
        embs.len()
    ))
}

fn cartan_module() -> Check {
    for n in TRIANGULAR_SIZES {
        let data = triangular_example(n);
        ensure(validate(&data).passes(), || format!("T_{n} fails DM = NC"))?;
        let note = data.note.clone().unwrap_or_default();
        ensure(note.contains(TRIANGULAR_TRUE_DEPTH), || {
            format!("T_{n}: note {note:?}")
        })?;
        if n >= 2 {
            let c = necessary_condition(&data, 1, Parity::Even).unwrap();
            ensure(c.holds, || format!("T_{n}: depth-two inequality fails"))?;
        }
    }
    let ctx = context();
    let mut checked = 0;
    for (name, emb) in embeddings(&ctx) {
        let tg = ctx.tables.table(&emb.supergroup).unwrap();
        let th = ctx.tables.table(&emb.subgroup).unwrap();
        let m = induction_restriction_matrix(&emb, &tg, &th).unwrap().matrix;
        let data = from_semisimple_pair(&m).unwrap();
        let cap = min_depth(&m).unwrap().search_cap;
        for n in 1..=cap / 2 {
            for (parity, depth) in [(Parity::Even, 2 * n), (Parity::Odd, 2 * n + 1)] {
                let verdict = necessary_condition(&data, n, parity).unwrap().holds;
                ensure(verdict == satisfies_depth(&m, depth).unwrap(), || {
                    format!("{name}: disagreement at depth {depth}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!(
        "T_1..T_12 validate, depth-two inequality holds though depth is 3; {checked} semisimple verdicts agree"
    ))
}

fn burnside_brauer() -> Check {
    let ctx = context();
    let mut groups = Vec::new();
    for spec in catalog_groups() {
        let g: Arc<PermutationGroup> = ctx.group(spec).unwrap();
        if g.center().order() != 1 {
            continue;
        }
        let t = ctx.tables.table(&g).unwrap();
        let chi = adjoint_character(&t);
        let rep = module_depth(&chi, &t).unwrap();
        let ell = rep
            .faithful_at
            .ok_or_else(|| format!("{spec}: adjoint not faithful"))?;
        let values = chi.distinct_values();
        ensure(ell as usize <= values, || {
            format!("{spec}: ell = {ell} > {values}")
        })?;
        groups.push(format!("{spec}:{ell}<={values}"));
    }
    Ok(groups.join(" "))
}

fn determinism() -> Check {
    let mut commands: Vec<Vec<&str>> = CATALOG.iter().map(|(g, h)| vec!["depth", g, h]).collect();
    commands.extend(CATALOG.iter().map(|(g, h)| vec!["module-depth", g, h]));
    commands.extend(CATALOG.iter().map(|(g, h)| vec!["chain", g, h]));
    for spec in catalog_groups() {
        commands.push(vec!["chartab", spec]);
        commands.push(vec!["double", spec]);
    }
    commands.extend([
        vec!["double", "G108"],
        vec!["corefree", "S(4)", "D(8)"],
        vec!["diag", "S(4)"],
        vec!["--certificate", "depth", "S(5)", "S(4)"],
    ]);
    let cache = tempfile::tempdir().unwrap();
    let pass = |threads: &str, cache: Option<&Path>| -> Vec<Vec<u8>> {
        commands
            .iter()
            .map(|args| subdepth(args, threads, cache).stdout)
            .collect()
    };
    let cold = pass(DETERMINISM_THREADS[0], Some(cache.path()));
    let warm = pass(DETERMINISM_THREADS[1], Some(cache.path()));
    let uncached = pass(DETERMINISM_THREADS[1], None);
    for (i, args) in commands.iter().enumerate() {
        ensure(!cold[i].is_empty(), || format!("{args:?}: empty output"))?;
        ensure(cold[i] == warm[i] && warm[i] == uncached[i], || {
            format!("{args:?}: outputs differ")
        })?;
    }
    Ok(format!(
        "{} reports identical across threads {:?}, cold/warm/no cache",
        commands.len(),
        DETERMINISM_THREADS
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("symmetric chain", symmetric_chain),
        ("D8 in S4", dihedral_in_s4),
        ("Drinfeld double of S_n", symmetric_doubles),
        ("order-108 example", order_108),
        ("normality criterion", normality),
        ("interval theorems", intervals),
        ("diagonal-embedding oracle", diagonal_oracle),
        ("character-table integrity", table_integrity),
        ("cartan module", cartan_module),
        ("Burnside-Brauer bound", burnside_brauer),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

//! Acceptance suite. Prints one `[PASS]`/`[FAIL]` line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::cell::Cell;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use parind::cli::{self, default_universe, format, parse};
use parind::jordan::{
    extended_support_induced, extended_support_tempered, jord_update_from_segment, lower_blocks,
    raise_blocks, rp_contains,
};
use parind::linkage::{decide_irreducible, liaison, single_twist_irreducible};
use parind::packets::{is_generic, packet_is_empty, standard_triples, ParamBlock};
use parind::rational::{q, qr};
use parind::segcalc::{derivative, linked};
use parind::{
    DemoOracle, Derivative, EpsilonOracle, Error, GpPair, JordUpdate, JordanSet,
    LanglandsParameter, OracleAnswer, Segment, Sign, Universe, Verdict, Q,
};
use rand::seq::SliceRandom;
use rand::Rng;

type Check = fn() -> Result<String, String>;

fn main() -> ExitCode {
    let criteria: [(&str, &str, Check, Option<Duration>); 10] = [
        (
            "AC1",
            "linkage agrees with set enumeration",
            ac1_linkage_oracle,
            Some(Duration::from_secs(5)),
        ),
        (
            "AC2",
            "liaison duality",
            ac2_liaison_duality,
            Some(Duration::from_secs(2)),
        ),
        ("AC3", "verdict symmetry", ac3_verdict_symmetry, None),
        (
            "AC4",
            "reducibility points vs single twists",
            ac4_rp_consistency,
            None,
        ),
        (
            "AC5",
            "jord update vs induced support",
            ac5_support_coherence,
            None,
        ),
        (
            "AC6",
            "derivative bookkeeping",
            ac6_derivatives,
            Some(Duration::from_secs(1)),
        ),
        ("AC7", "lower/raise inversion", ac7_lower_raise, None),
        ("AC8", "multiplicity dichotomy", ac8_dichotomy, None),
        (
            "AC9",
            "generic parameters give irreducible standard modules",
            ac9_generic_irreducible,
            None,
        ),
        (
            "AC10",
            "cli round trip, json stability, exit codes",
            ac10_cli,
            Some(Duration::from_secs(1)),
        ),
    ];
    let mut failed = 0;
    for (id, name, check, limit) in criteria {
        let start = Instant::now();
        let res = check();
        let took = start.elapsed();
        let res = match (res, limit) {
            (Ok(msg), Some(l)) if took > l => Err(format!("{msg}; took {took:.2?}, limit {l:.0?}")),
            (r, _) => r,
        };
        match res {
            Ok(msg) => println!("[PASS] {id} {name}: {msg} ({took:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {id} {name}: {msg} ({took:.2?})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Points of `[e,f]`, built by stepping down from `e`.
fn enumerate(e: Q, f: Q) -> Vec<Q> {
    let mut out = Vec::new();
    let mut x = e;
    while x >= f {
        out.push(x);
        x -= 1;
    }
    out
}

fn oracle_linked(same_symbol: bool, a: &[Q], b: &[Q]) -> bool {
    if !same_symbol {
        return false;
    }
    let sub = |x: &[Q], y: &[Q]| x.iter().all(|p| y.contains(p));
    if sub(a, b) || sub(b, a) {
        return false;
    }
    let mut union: Vec<Q> = a.iter().chain(b).copied().collect();
    union.sort();
    union.dedup();
    union.windows(2).all(|w| w[1] - w[0] == q(1))
}

fn ac1_linkage_oracle() -> Result<String, String> {
    let u = universe();
    let grid: Vec<Q> = (-8..=8).map(|n| qr(n, 2)).collect();
    let lines = [("r1", "r1"), ("r1", "r2"), ("r3", "r3"), ("r3", "r3v")];
    let (mut quads, mut pairs, mut empties) = (0u64, 0u64, 0u64);
    for (n1, n2) in lines {
        let (r1, r2) = (sym(&u, n1), sym(&u, n2));
        for &e1 in &grid {
            for &f1 in &grid {
                for &e2 in &grid {
                    for &f2 in &grid {
                        quads += 1;
                        let (Ok(s1), Ok(s2)) = (Segment::new(r1, e1, f1), Segment::new(r2, e2, f2))
                        else {
                            continue;
                        };
                        let got = linked(&s1, &s2);
                        if s1.is_empty() || s2.is_empty() {
                            empties += 1;
                            ensure(matches!(got, Err(Error::Domain(_))), || {
                                format!("empty segment accepted: <{e1},{f1}> <{e2},{f2}>")
                            })?;
                            continue;
                        }
                        pairs += 1;
                        let want = oracle_linked(r1 == r2, &enumerate(e1, f1), &enumerate(e2, f2));
                        ensure(got == Ok(want), || {
                            format!(
                                "<{e1},{f1}>_{n1} vs <{e2},{f2}>_{n2}: got {got:?}, oracle {want}"
                            )
                        })?;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{quads} endpoint quadruples, {pairs} segment pairs agree, {empties} empty-segment pairs rejected"
    ))
}

fn ac2_liaison_duality() -> Result<String, String> {
    let u = universe();
    let mut r = rng(2);
    let mut linked_count = 0;
    for i in 0..10_000 {
        let kind = KINDS[i % 3];
        let j = random_jordan(&mut r, &u, kind);
        let t = random_triple(&mut r, &u);
        let a = liaison(&u, &t, &j);
        let b = liaison(&u, &t.contragredient(&u), &j);
        ensure(a == b, || {
            format!("instance {i}: {t:?} on {j:?}: {a} vs {b}")
        })?;
        linked_count += a as u32;
    }
    Ok(format!(
        "10000 instances, {linked_count} linked, zero failures"
    ))
}

fn ac3_verdict_symmetry() -> Result<String, String> {
    let u = universe();
    let mut r = rng(3);
    let mut seen = [0u32; 3];
    for i in 0..10_000 {
        let kind = random_kind(&mut r);
        let j = random_jordan(&mut r, &u, kind);
        let n = r.gen_range(0..=4);
        let ts: Vec<_> = (0..n)
            .map(|_| random_off_centre_triple(&mut r, &u))
            .collect();
        let generic = r.gen_bool(0.5);
        let v = decide_irreducible(&u, &ts, &j, generic).map_err(|e| e.to_string())?;
        seen[v as usize] += 1;
        let mut perm = ts.clone();
        perm.shuffle(&mut r);
        let vp = decide_irreducible(&u, &perm, &j, generic).map_err(|e| e.to_string())?;
        ensure(v == vp, || {
            format!("instance {i}: permutation changed {v} to {vp}")
        })?;
        if n > 0 {
            let mut swapped = ts.clone();
            let k = r.gen_range(0..n);
            swapped[k] = swapped[k].contragredient(&u);
            let vs = decide_irreducible(&u, &swapped, &j, generic).map_err(|e| e.to_string())?;
            ensure(v == vs, || {
                format!("instance {i}: contragredient swap changed {v} to {vs}")
            })?;
        }
    }
    Ok(format!(
        "10000 families (irreducible {}, reducible {}, unknown {}), zero failures",
        seen[0], seen[1], seen[2]
    ))
}

fn ac4_rp_consistency() -> Result<String, String> {
    let u = universe();
    let mut r = rng(4);
    let (mut done, mut singletons, mut disagreements, mut non_self_dual) = (0, 0, 0, 0);
    while done < 10_000 {
        let kind = random_kind(&mut r);
        let j = random_jordan(&mut r, &u, kind);
        let rho = random_symbol(&mut r, &u);
        let x = random_exponent(&mut r, 4);
        if rp_contains(&u, rho, x, &j) {
            continue;
        }
        done += 1;
        let v = single_twist_irreducible(&u, rho, x, &j);
        ensure(v == Verdict::Irreducible, || {
            format!("({rho:?},{x}) not in RP but verdict {v}")
        })?;
        if x != q(0) {
            singletons += 1;
            let t = parind::Triple::new(rho, x, x).unwrap();
            let d = decide_irreducible(&u, &[t], &j, true).map_err(|e| e.to_string())?;
            if d == Verdict::Reducible {
                ensure(liaison(&u, &t, &j), || {
                    format!("Reducible without liaison at ({rho:?},{x})")
                })?;
                disagreements += 1;
                non_self_dual += !u.is_self_dual(rho) as u32;
            }
        }
    }
    Ok(format!(
        "10000 points outside RP all Irreducible; {singletons} singleton checks, \
         {disagreements} generic Reducible verdicts all backed by liaison \
         ({non_self_dual} of them at non-self-dual symbols)"
    ))
}

fn ac5_support_coherence() -> Result<String, String> {
    let u = universe();
    let mut r = rng(5);
    let (mut done, mut incompatible) = (0, 0);
    while done < 1_000 {
        let kind = random_kind(&mut r);
        let j = random_jordan(&mut r, &u, kind);
        let rho = random_symbol(&mut r, &u);
        let e = if r.gen_ratio(1, 8) {
            qr(r.gen_range(0..=12), 3)
        } else {
            qr(r.gen_range(0..=8), 2)
        };
        let f = if u.is_self_dual(rho) || r.gen_ratio(1, 4) {
            e - q(r.gen_range(0..=4))
        } else {
            -e
        };
        let Ok(seg) = Segment::new(rho, e, f) else {
            continue;
        };
        if f > q(0) || seg.is_empty() {
            continue;
        }
        match jord_update_from_segment(&u, &seg, &j).map_err(|e| e.to_string())? {
            JordUpdate::Incompatible => incompatible += 1,
            JordUpdate::Updated(k) => {
                done += 1;
                let lhs = extended_support_tempered(&k);
                let rhs = extended_support_induced(&u, &[seg], &j);
                ensure(lhs == rhs, || {
                    format!("supports differ for {seg:?} on {j:?}")
                })?;
            }
        }
    }
    Ok(format!(
        "1000 successful updates agree ({incompatible} incompatible skipped)"
    ))
}

fn ac6_derivatives() -> Result<String, String> {
    let u = universe();
    let mut n = 0;
    for name in ["r1", "r2", "r6"] {
        let rho = sym(&u, name);
        let d = u.dim(rho);
        for a in 1..=8u32 {
            for k in 0..=a * d {
                n += 1;
                let b = qr(n as i64 % 7 - 3, 2);
                match derivative(&u, rho, a, b, k).map_err(|e| e.to_string())? {
                    Derivative::Zero => {
                        ensure(k % d != 0, || format!("({name},{a},{k}) zero but d | k"))?
                    }
                    Derivative::Segment(s) => {
                        ensure(k % d == 0, || {
                            format!("({name},{a},{k}) nonzero but d does not divide k")
                        })?;
                        let want = (a - k / d) as usize;
                        ensure(s.len() == want, || {
                            format!("({name},{a},{k}) length {} != {want}", s.len())
                        })?;
                    }
                }
            }
            ensure(derivative(&u, rho, a, q(0), a * d + 1).is_err(), || {
                format!("({name},{a}) accepted k > a·d")
            })?;
        }
    }
    Ok(format!(
        "{n} (a, d, k) cases exhaustive, a <= 8, d in {{1,2,3}}"
    ))
}

fn ac7_lower_raise() -> Result<String, String> {
    let u = universe();
    let mut r = rng(7);
    let mut done = 0;
    while done < 1_000 {
        let kind = random_kind(&mut r);
        let j = random_jordan(&mut r, &u, kind);
        let candidates: Vec<_> = j
            .blocks()
            .distinct()
            .filter(|b| b.a >= 2 && u.is_self_dual(b.rho))
            .copied()
            .collect();
        let Some(b) = candidates.choose(&mut r) else {
            continue;
        };
        let m = j.mult(b.rho, b.a);
        let lowered = lower_blocks(&u, b.rho, b.a, &j).map_err(|e| e.to_string())?;
        let x = qr(b.a as i64 - 1, 2);
        let back = raise_blocks(&u, b.rho, x, m, &lowered).map_err(|e| e.to_string())?;
        ensure(back == j, || {
            format!("round trip failed for {b:?} on {j:?}")
        })?;
        done += 1;
    }
    Ok("1000 instances round-trip exactly".into())
}

struct Counting {
    calls: Cell<usize>,
}

impl EpsilonOracle for Counting {
    fn query(&self, u: &Universe, j: &JordanSet, jp: &JordanSet) -> parind::Result<OracleAnswer> {
        self.calls.set(self.calls.get() + 1);
        DemoOracle.query(u, j, jp)
    }
}

/// Random generic parameters on `SO(d) × SO(d')`, `d > d'`, of distinct
/// parities.
fn generic_pairs(count: usize) -> Vec<(LanglandsParameter, LanglandsParameter)> {
    let u = universe();
    let mut r = rng(8);
    let mut out = Vec::new();
    while out.len() < count {
        let odd = r.gen_bool(0.5);
        let (qs, qs2) = (r.gen_bool(0.7), r.gen_bool(0.7));
        let p = random_parameter(&mut r, &u, odd, qs);
        let p2 = random_parameter(&mut r, &u, !odd, qs2);
        if p.group().dim() <= p2.group().dim() || !is_generic(&u, &p) || !is_generic(&u, &p2) {
            continue;
        }
        out.push((p, p2));
    }
    out
}

fn tempered_as_parameter(u: &Universe, p: &LanglandsParameter) -> LanglandsParameter {
    let j = p.tempered_part();
    let blocks = j
        .blocks()
        .iter()
        .map(|b| ParamBlock::new(b.rho, b.a, q(0)))
        .collect();
    let g = j.group().clone().with_quasisplit(p.group().quasisplit());
    LanglandsParameter::new(u, g, blocks, None).unwrap()
}

fn ac8_dichotomy() -> Result<String, String> {
    let u = universe();
    let (mut ones, mut plus, mut minus, mut empty) = (0, 0, 0, 0);
    for (i, (p, p2)) in generic_pairs(1_000).iter().enumerate() {
        let pair =
            GpPair::new(p.group().clone(), p2.group().clone(), None).map_err(|e| e.to_string())?;
        let oracle = Counting {
            calls: Cell::new(0),
        };
        let t = parind::multiplicity_table(&u, p, p2, &pair, &oracle).map_err(|e| e.to_string())?;
        let nonempty = !packet_is_empty(p) && !packet_is_empty(p2);
        let e = DemoOracle
            .query(&u, p.tempered_part(), p2.tempered_part())
            .unwrap()
            .e;
        match e {
            Sign::Plus => plus += 1,
            Sign::Minus => minus += 1,
        }
        empty += !nonempty as u32;
        let want = (e == parind::mu(&pair) && nonempty) as u32;
        ensure(t.total_mass() == want, || {
            format!(
                "pair {i}: mass {} but E={e}, mu={}, nonempty={nonempty}",
                t.total_mass(),
                parind::mu(&pair)
            )
        })?;
        ensure(oracle.calls.get() == nonempty as usize, || {
            format!("pair {i}: {} oracle calls", oracle.calls.get())
        })?;
        ones += want;

        let (tp, tp2) = (tempered_as_parameter(&u, p), tempered_as_parameter(&u, p2));
        let tpair = GpPair::new_unordered(tp.group().clone(), tp2.group().clone(), None)
            .map_err(|e| e.to_string())?;
        let tt = parind::multiplicity_table(&u, &tp, &tp2, &tpair, &DemoOracle)
            .map_err(|e| e.to_string())?;
        ensure(tt == t, || {
            format!("pair {i}: tempered reduction changed the table")
        })?;
    }
    ensure(plus > 0 && minus > 0, || {
        format!("only one oracle branch seen (+{plus}, -{minus})")
    })?;
    Ok(format!(
        "1000 generic pairs (E=+1: {plus}, E=-1: {minus}, empty packets: {empty}), {ones} tables of mass 1, \
         tempered reduction exact"
    ))
}

fn ac9_generic_irreducible() -> Result<String, String> {
    let u = universe();
    let mut n = 0;
    for (p, p2) in generic_pairs(1_000) {
        for x in [&p, &p2] {
            let v = decide_irreducible(&u, &standard_triples(&u, x), x.tempered_part(), true)
                .map_err(|e| e.to_string())?;
            ensure(v == Verdict::Irreducible, || {
                format!("generic parameter gave {v}: {x:?}")
            })?;
            n += 1;
        }
    }
    Ok(format!(
        "{n} generic parameters, all standard modules Irreducible"
    ))
}

const CORPUS: [&str; 50] = [
    "<2,-1>_r1 x pi{(r1,1)}",
    "St(r1,4)|1 x pi{(r1,2)}",
    "pi{}",
    "pi{(r1,2)}",
    "pi{(r1,4),(r1,2)}",
    "<3/2,1/2>_r1 x pi{(r1,2)}",
    "<0,0>_r1 x pi{(r1,1)}",
    "<1,0>_r1",
    "<1,0>_r1 x <2,1>_r1",
    "<0,1>_r1",
    "St(r2,1)",
    "St(r2,3)|1/2",
    "St(r2,3)|0",
    "St(r2,3)|-3/2",
    "<10/4,-2/4>_r1",
    "<7/2,5/2>_r1 x pi{(r1,6)}",
    "<5/2,3/2>_r1 x <1,0>_r2 x pi{(r2,1),(r1,2)}",
    "St(r3,2)|1 x pi{(r3,1),(r3v,1)}",
    "<1,-1>_r3 x pi{}",
    "<1/3,-2/3>_r1 x pi{(r1,1)}",
    "<-1/2,-1/2>_r5 x pi{(r5,2)}",
    "  <2,1>_r1   x   pi{ (r1,3) , (r1,1) }  ",
    "St(r1,1)|5 x St(r1,1)|4 x St(r1,1)|3",
    "pi{(r1,1),(r1,1),(r1,1)}",
    "<4,-4>_r1 x pi{(r1,9)}",
    "<-4,-4>_r1 x <4,4>_r1",
    "St(r4,2)|1 x pi{(r4,1)}",
    "<3,2>_r3v x <-2,-3>_r3 x pi{(r3,2),(r3v,2)}",
    "St(r5,5)|7/2 x pi{(r5,1)}",
    "<1/2,-1/2>_r2 x pi{(r2,2)}",
    "<6,6>_r1",
    "<-3,-4>_r2",
    "St(r1,2) x St(r1,3) x pi{(r1,1)}",
    "<5/2,-1/2>_r1 x pi{(r1,2)}",
    "<1,1>_r1 x <1,1>_r1 x pi{(r1,1)}",
    "pi{(r3,3),(r3v,3),(r1,1)}",
    "St(r3v,4)|-1",
    "<2,2>_r4 x pi{(r4,2),(r4,2)}",
    "<0,-1>_r5 x pi{(r5,1)}",
    "St(r1,8)|1/2 x pi{(r1,2),(r1,4)}",
    "<9/2,7/2>_r1 x <7/2,5/2>_r1 x pi{(r1,2)}",
    "<1,0>_r2 x <0,-1>_r2",
    "St(r2,2)|3 x St(r2,2)|2 x pi{}",
    "<3,3>_r3 x pi{(r3,1),(r3v,1)}",
    "<-1/2,-3/2>_r1 x pi{(r1,1),(r1,3)}",
    "St(r4,3)|2 x <1,1>_r4 x pi{(r4,1)}",
    "<2/1,-1/1>_r1",
    "<0,0>_r3 x <0,0>_r3v",
    "St(r5,1)|1/2 x St(r5,1)|1/2",
    "<12,9>_r1 x pi{(r1,23)}",
];

fn run(args: &[&str]) -> cli::CliOutput {
    cli::run(std::iter::once("parind").chain(args.iter().copied()))
}

fn ac10_cli() -> Result<String, String> {
    let u = default_universe();
    for text in CORPUS {
        let e = parse(text, &u).map_err(|e| format!("corpus entry `{text}`: {e}"))?;
        let canon = format(&e, &u);
        let back = parse(&canon, &u).map_err(|e| format!("reparse of `{canon}`: {e}"))?;
        ensure(back == e, || {
            format!("`{text}` -> `{canon}` does not round-trip")
        })?;
        ensure(format(&back, &u) == canon, || {
            format!("`{canon}` is not a fixed point")
        })?;
    }

    let commands: [(&[&str], i32); 16] = [
        (
            &["--json", "irred", "--generic", "<3/2,1/2>_r1 x pi{(r1,2)}"],
            0,
        ),
        (&["--json", "rp", "r1", "3/2", "pi{(r1,2)}"], 0),
        (&["--json", "linked", "<2,-1>_r1 x <3,1>_r1"], 0),
        (&["--json", "suppext", "<1,0>_r1 x pi{(r1,1)}"], 0),
        (&["--json", "generic", "St(r1,4)|1 x pi{(r1,1)}"], 0),
        (
            &[
                "--json",
                "gp",
                "pi{(r1,2),(r2,1)}",
                "pi{(r1,3),(r1,1)}",
                "--demo-oracle",
            ],
            0,
        ),
        (&["--json", "jord-update", "<3/2,-1/2>_r1", "pi{(r1,1)}"], 0),
        (&["--json", "jacquet", "r1^3/2", "pi{(r1,4)}"], 0),
        (&["--json", "irred", "<0,0>_r1 x pi{(r1,1)}"], 1),
        (&["--json", "irred", "<1,0>_zz x pi{(r1,1)}"], 1),
        (&["--json", "jord-update", "<2,1>_r1", "pi{(r1,1)}"], 1),
        (&["--json", "irred", "pi{(r1,1)} x <1,0>_r1"], 2),
        (&["--json", "irred", "<1/0,0>_r1 x pi{(r1,1)}"], 2),
        (&["--json", "rp", "r1", "3/2", "pi{(r1,2)} x pi{}"], 2),
        (&["irred", "<3/2,1/2>_r1 x pi{(r1,2)}", "--generic"], 0),
        (&["frobnicate"], 2),
    ];
    let mut codes = [0u32; 3];
    for (args, want) in commands {
        let a = run(args);
        let b = run(args);
        ensure(a == b, || format!("{args:?}: output differs between runs"))?;
        ensure(a.code == want, || {
            format!(
                "{args:?}: exit {} (want {want}): {}{}",
                a.code, a.stdout, a.stderr
            )
        })?;
        codes[a.code as usize] += 1;
        if args[0] == "--json" {
            let v: serde_json::Value = serde_json::from_str(a.stdout.trim())
                .map_err(|e| format!("{args:?}: not JSON ({e}): {}", a.stdout))?;
            ensure(v.get("command").is_some(), || {
                format!("{args:?}: no command field")
            })?;
        }
    }
    let human = run(&["irred", "--generic", "<3/2,1/2>_r1 x pi{(r1,2)}"]);
    ensure(human.stdout == "Reducible\n", || {
        format!("irred printed {:?}", human.stdout)
    })?;
    let rp = run(&["rp", "r1", "3/2", "pi{(r1,2)}"]);
    ensure(rp.stdout == "true\n", || {
        format!("rp printed {:?}", rp.stdout)
    })?;
    Ok(format!(
        "50 expressions round-trip; 16 commands byte-stable; exit codes 0/1/2 seen {}/{}/{} times",
        codes[0], codes[1], codes[2]
    ))
}

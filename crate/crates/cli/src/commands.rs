//! The subcommands.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};

use khseq::complex::{bockstein, induced_map, F2Homology, GradedComplex, Grading, HomologyTable, Ring, ZHomology};
use khseq::diagram::{
    apply_axis_wrap_move, close_quotients, diagram_invariants, lift_intravergent, AnnularDiagram, DiagramInvariants,
    QuotientTangle, WrapDirection,
};
use khseq::equivariant::{axis_moving_maps, pair_cone_homology, verify_theorem, TateReport, VerifyOptions};
use khseq::khovanov::{euler_characteristics, KhComplex, Laurent, Laurent2, Mode, QRange};

use crate::args::{Command, Common, WrapArgs};
use crate::{CliError, Outcome};

pub fn input_path(c: &Command) -> &Path {
    match c {
        Command::Kh(a)
        | Command::Akh(a)
        | Command::Fplus(a)
        | Command::Cone(a)
        | Command::Tate(a)
        | Command::Verify(a)
        | Command::Euler(a) => &a.input.file,
        Command::Quotients(i) | Command::Invariants(i) => &i.file,
        Command::Wrap(w) => &w.input.file,
    }
}

pub fn dispatch(c: &Command, path: &Path, text: &str) -> Result<(&'static str, Value, Outcome), CliError> {
    let t = QuotientTangle::parse_named(&path.to_string_lossy(), text)?;
    let common = |a: &Common| json!({ "ring": a.ring, "qmin": a.qmin, "qmax": a.qmax, "window": a.window });
    Ok(match c {
        Command::Kh(a) => ("kh", common(a), kh(a, &t)?),
        Command::Akh(a) => ("akh", common(a), akh(a, &t)?),
        Command::Quotients(_) => ("quotients", json!({}), quotients(&t)?),
        Command::Invariants(_) => ("invariants", json!({}), invariants(&t)?),
        Command::Fplus(a) => ("fplus", common(a), fplus(a, &t)?),
        Command::Cone(a) => ("cone", common(a), cone(a, &t)?),
        Command::Tate(a) => ("tate", common(a), tate(a, &t)?),
        Command::Verify(a) => ("verify", common(a), verify(a, &t)?),
        Command::Euler(a) => ("euler", common(a), euler(a, &t)?),
        Command::Wrap(w) => ("wrap", json!({ "unwrap": w.unwrap, "times": w.times }), wrap(w, &t)?),
    })
}

fn qrange(a: &Common) -> Result<QRange, CliError> {
    let q = QRange { min: a.qmin.unwrap_or(i32::MIN), max: a.qmax.unwrap_or(i32::MAX) };
    if q.min > q.max {
        return Err(CliError::Input(format!("--qmin {} exceeds --qmax {}", q.min, q.max)));
    }
    Ok(q)
}

fn require_f2(a: &Common, what: &str) -> Result<(), CliError> {
    if a.ring != Ring::F2 {
        return Err(CliError::Input(format!("{what} is computed over F2 only")));
    }
    Ok(())
}

fn value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn graded_dims(m: &BTreeMap<Grading, usize>) -> Value {
    Value::Array(m.iter().map(|(g, d)| json!({ "grading": g, "dim": d })).collect())
}

/// Homology of a complex over the requested ring, with the complex built over Z when needed.
fn homology(build: impl Fn(Ring) -> Result<KhComplex, CliError>, ring: Ring) -> Result<(HomologyTable, Option<KhComplex>), CliError> {
    match ring {
        Ring::F2 => Ok((F2Homology::compute(build(Ring::F2)?.complex())?.table(), None)),
        Ring::Z | Ring::Z4 => {
            let c = build(Ring::Z)?;
            let h = ZHomology::compute(c.complex())?;
            let table = if ring == Ring::Z { h.table() } else { h.z4_table() };
            Ok((table, Some(c)))
        }
    }
}

fn write_table(s: &mut String, table: &HomologyTable, trigraded: bool, extra: impl Fn(Grading) -> String) {
    if trigraded {
        let _ = writeln!(s, "{:>5} {:>5} {:>5}  group", "i", "j", "k");
    } else {
        let _ = writeln!(s, "{:>5} {:>5}  group", "i", "j");
    }
    for e in &table.entries {
        let g = e.grading;
        if trigraded {
            let _ = write!(s, "{:>5} {:>5} {:>5}  ", g.i, g.j, g.k);
        } else {
            let _ = write!(s, "{:>5} {:>5}  ", g.i, g.j);
        }
        let _ = writeln!(s, "{}{}", e.group.display(table.ring), extra(g));
    }
    if table.entries.is_empty() {
        let _ = writeln!(s, "  (zero)");
    }
}

fn kh(a: &Common, t: &QuotientTangle) -> Result<Outcome, CliError> {
    let k = lift_intravergent(t)?;
    let q = qrange(a)?;
    let (table, integral) = homology(|r| Ok(KhComplex::build(k.diagram(), r, Mode::Kh, q)?), a.ring)?;
    let mut text = format!("Kh(K; {}), N = {}\n", a.ring, k.n_crossings());
    write_table(&mut text, &table, false, |_| String::new());
    let mut result = json!({ "crossings": k.n_crossings(), "homology": value(&table) });
    if let Some(c) = integral {
        let hf = F2Homology::compute(&c.complex().change_ring(Ring::F2)?)?;
        let mut arrows = Vec::new();
        for (g, m) in bockstein(c.complex(), &hf)? {
            let rank = m.rank();
            if rank > 0 {
                let to = g - Grading::new(1, 0, 0);
                let _ = writeln!(text, "Bockstein ({},{}) -> ({},{}): rank {rank}", g.i, g.j, to.i, to.j);
                arrows.push(json!({ "from": g, "to": to, "rank": rank }));
            }
        }
        result["bockstein"] = Value::Array(arrows);
    }
    Ok(Outcome { text, result, pass: true })
}

/// Quantum grading of `Kh(K)` that a trigrading of the pair cone contributes to.
fn cone_quantum(g: Grading, delta: i64) -> i64 {
    2 * g.j as i64 + g.k as i64 + 1 - 3 * delta
}

fn akh(a: &Common, t: &QuotientTangle) -> Result<Outcome, CliError> {
    let inv = diagram_invariants(t)?;
    let quotients = close_quotients(t)?;
    let q = qrange(a)?;
    let mut text = String::new();
    let mut result = json!({});
    // A class of K̄₁ enters the cone one step up in i and k.
    for (name, d, offset) in [("k1", &quotients.k1, Grading::new(1, 0, 1)), ("k0", &quotients.k0, Grading::new(0, 0, 0))] {
        let (mut table, _) = homology(|r| Ok(KhComplex::build(d, r, Mode::Annular, QRange::ALL)?), a.ring)?;
        table.entries.retain(|e| {
            let j = cone_quantum(e.grading + offset, inv.delta);
            j >= q.min as i64 && j <= q.max as i64
        });
        let label = if name == "k1" { "K̄₁" } else { "K̄₀" };
        let _ = writeln!(text, "AKh({label}; {})", a.ring);
        write_table(&mut text, &table, true, |g| format!("    [j = {}]", cone_quantum(g + offset, inv.delta)));
        result[name] = value(&table);
    }
    Ok(Outcome { text, result, pass: true })
}

fn diagram_value(d: &AnnularDiagram) -> Value {
    let crossings: Vec<Vec<&str>> =
        d.pd().crossings().iter().map(|x| x.iter().map(|&a| d.arc_name(a)).collect()).collect();
    let ray: BTreeMap<&str, u32> =
        (0..d.n_arcs()).filter(|&a| d.ray_hits()[a] > 0).map(|a| (d.arc_name(a), d.ray_hits()[a])).collect();
    json!({
        "crossings": crossings,
        "ray": ray,
        "basepoint": d.basepoint().map(|b| d.arc_name(b)),
    })
}

fn write_diagram(s: &mut String, title: &str, d: &AnnularDiagram) {
    let _ = writeln!(s, "{title}: {} crossings", d.n_crossings());
    for x in d.pd().crossings() {
        let _ = writeln!(s, "  X {}", x.iter().map(|&a| d.arc_name(a)).collect::<Vec<_>>().join(" "));
    }
    let ray: Vec<String> = (0..d.n_arcs())
        .filter(|&a| d.ray_hits()[a] > 0)
        .map(|a| format!("{}:{}", d.arc_name(a), d.ray_hits()[a]))
        .collect();
    let _ = writeln!(s, "  ray {}", ray.join(" "));
    if let Some(b) = d.basepoint() {
        let _ = writeln!(s, "  basepoint {}", d.arc_name(b));
    }
}

fn quotients(t: &QuotientTangle) -> Result<Outcome, CliError> {
    let q = close_quotients(t)?;
    let inv = diagram_invariants(t)?;
    let mut text = String::new();
    write_diagram(&mut text, "K̄₀", &q.k0);
    let _ = writeln!(text, "  W = {}", inv.w);
    write_diagram(&mut text, "K̄₁", &q.k1);
    let _ = writeln!(text, "  W = {}", inv.w1);
    write_diagram(&mut text, "L″", &q.kink);
    let _ = writeln!(text, "  kink crossing {}, loop {}", q.kink_crossing, q.kink.arc_name(q.kink_loop));
    let mut k0 = diagram_value(&q.k0);
    k0["winding"] = json!(inv.w);
    let mut k1 = diagram_value(&q.k1);
    k1["winding"] = json!(inv.w1);
    let mut kink = diagram_value(&q.kink);
    kink["kink_crossing"] = json!(q.kink_crossing);
    kink["loop"] = json!(q.kink.arc_name(q.kink_loop));
    Ok(Outcome { text, result: json!({ "k0": k0, "k1": k1, "kink": kink }), pass: true })
}

fn invariants_text(inv: &DiagramInvariants) -> String {
    format!(
        "N = {}, N̄ = {}, N₋ = {}, N̄₋ = {}, Δ = {}, W = {}, W − Δ = {}\n",
        inv.n, inv.n_bar, inv.n_minus, inv.n_bar_minus, inv.delta, inv.w, inv.axis_linking_2x
    )
}

fn invariants(t: &QuotientTangle) -> Result<Outcome, CliError> {
    let inv = diagram_invariants(t)?;
    Ok(Outcome { text: invariants_text(&inv), result: value(&inv), pass: true })
}

fn fplus(a: &Common, t: &QuotientTangle) -> Result<Outcome, CliError> {
    require_f2(a, "f±")?;
    let q = qrange(a)?;
    let inv = diagram_invariants(t)?;
    let maps = axis_moving_maps(t)?;
    maps.check()?;
    let h1 = F2Homology::compute(maps.k1.complex())?;
    let h0 = F2Homology::compute(maps.k0.complex())?;
    let mut text = String::new();
    let mut result = json!({});
    for (name, f) in [("f_plus", &maps.f_plus), ("f_minus", &maps.f_minus)] {
        let induced = induced_map(f, &h1, &h0)?;
        let _ = writeln!(text, "{}: shift {}", if name == "f_plus" { "f⁺" } else { "f⁻" }, f.shift());
        let _ = writeln!(text, "{:>16}  {:>16}  {:>4} {:>4} {:>4}", "source", "target", "dim", "dim", "rank");
        let mut rows = Vec::new();
        for (g, m) in &induced {
            let j = cone_quantum(*g + Grading::new(1, 0, 1), inv.delta);
            if j < q.min as i64 || j > q.max as i64 {
                continue;
            }
            let to = *g + f.shift();
            let (src, tgt, rank) = (h1.dim(*g), h0.dim(to), m.rank());
            let _ = writeln!(text, "{:>16}  {:>16}  {src:>4} {tgt:>4} {rank:>4}", g.to_string(), to.to_string());
            rows.push(json!({ "source": g, "target": to, "source_dim": src, "target_dim": tgt, "rank": rank }));
        }
        result[name] = json!({ "shift": f.shift(), "ranks": rows });
    }
    Ok(Outcome { text, result, pass: true })
}

fn cone(a: &Common, t: &QuotientTangle) -> Result<Outcome, CliError> {
    require_f2(a, "the pair cone")?;
    let q = qrange(a)?;
    let inv = diagram_invariants(t)?;
    let mut dims = pair_cone_homology(t)?;
    dims.retain(|g, _| {
        let j = cone_quantum(*g, inv.delta);
        j >= q.min as i64 && j <= q.max as i64
    });
    let mut totals: BTreeMap<i64, usize> = BTreeMap::new();
    let mut text = format!("H(Cone(f⁺); F2), Δ = {}\n{:>5} {:>5} {:>5}  dim    j\n", inv.delta, "i", "j", "k");
    for (g, &d) in &dims {
        let j = cone_quantum(*g, inv.delta);
        *totals.entry(j).or_default() += d;
        let _ = writeln!(text, "{:>5} {:>5} {:>5}  {d:>3}  {j:>3}", g.i, g.j, g.k);
    }
    let by_j: Vec<Value> = totals.iter().map(|(j, d)| json!({ "j": j, "dim": d })).collect();
    Ok(Outcome { text, result: json!({ "delta": inv.delta, "homology": graded_dims(&dims), "by_j": by_j }), pass: true })
}

fn run_verify(a: &Common, t: &QuotientTangle) -> Result<TateReport, CliError> {
    require_f2(a, "the Tate spectral sequence")?;
    Ok(verify_theorem(t, VerifyOptions { q: qrange(a)?, min_window: a.window })?)
}

fn tate(a: &Common, t: &QuotientTangle) -> Result<Outcome, CliError> {
    let r = run_verify(a, t)?;
    let mut text = format!("{:>5}  {:>9}  {:>6}  pages\n", "j", "collapsed", "window");
    let mut rows = Vec::new();
    let mut pass = true;
    for q in &r.quantum {
        let pages: Vec<String> = q.ss_page_dims.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(text, "{:>5}  {:>9}  {:>6}  {}", q.j, q.tate_collapsed, q.window, pages.join(" "));
        pass &= q.tate_collapsed == q.e_infinity;
        rows.push(json!({
            "j": q.j,
            "collapsed": q.tate_collapsed,
            "window": q.window,
            "page_dims": q.ss_page_dims,
            "e_infinity": q.e_infinity,
            "collapse_page": q.collapse_page,
        }));
    }
    Ok(Outcome { text, result: json!({ "quantum": rows }), pass })
}

fn verify(a: &Common, t: &QuotientTangle) -> Result<Outcome, CliError> {
    let r = run_verify(a, t)?;
    let mut text = invariants_text(&r.invariants);
    let _ = writeln!(text, "{:>5}  {:>4}  {:>4}  {:>9}  {:>6}  {:<36}  result", "j", "Kh", "E∞", "collapsed", "target", "cone terms");
    for q in &r.quantum {
        let terms: Vec<String> = q.target_terms.iter().map(|g| format!("{}:{}", g.grading, g.dim)).collect();
        let ok = q.theorem && q.smith_inequality && q.single_grading != Some(false) && q.free_action != Some(false);
        let _ = writeln!(
            text,
            "{:>5}  {:>4}  {:>4}  {:>9}  {:>6}  {:<36}  {}",
            q.j,
            q.kh_total,
            q.e_infinity,
            q.tate_collapsed,
            q.target,
            if terms.is_empty() { "-".to_string() } else { terms.join(" ") },
            if ok { "ok" } else { "FAIL" }
        );
    }
    let _ = writeln!(text, "{}", if r.pass { "PASS" } else { "FAIL" });
    Ok(Outcome { text, result: value(&r), pass: r.pass })
}

fn restrict(p: &Laurent, q: QRange) -> Laurent {
    Laurent(p.0.iter().filter(|(j, _)| q.contains(**j)).map(|(&j, &c)| (j, c)).collect())
}

fn annular_dims(c: &GradedComplex) -> Result<BTreeMap<Grading, usize>, CliError> {
    Ok(F2Homology::compute(c)?.dims())
}

fn euler(a: &Common, t: &QuotientTangle) -> Result<Outcome, CliError> {
    let q = qrange(a)?;
    let k = lift_intravergent(t)?;
    let (v, _) = euler_characteristics(k.diagram());
    let v = restrict(&v, q);
    let h = F2Homology::compute(KhComplex::build(k.diagram(), Ring::F2, Mode::Kh, q)?.complex())?;
    let chi = Laurent::from_dims(&h.dims());
    let mut text = format!("V(K)      state sum  {v}\n          homology   {chi}\n");
    let mut pass = v == chi;
    let mut result = json!({ "lift": { "state_sum": value(&v), "homology": value(&chi), "equal": v == chi } });
    let quotients = close_quotients(t)?;
    for (name, label, d) in [("k1", "K̄₁", &quotients.k1), ("k0", "K̄₀", &quotients.k0)] {
        let (_, av) = euler_characteristics(d);
        let c = KhComplex::build(d, Ring::F2, Mode::Annular, QRange::ALL)?;
        let achi = Laurent2::from_dims(&annular_dims(c.complex())?);
        let _ = writeln!(text, "AV({label})   state sum  {av}\n          homology   {achi}");
        pass &= av == achi;
        result[name] = json!({ "state_sum": value(&av), "homology": value(&achi), "equal": av == achi });
    }
    let _ = writeln!(text, "{}", if pass { "equal" } else { "MISMATCH" });
    Ok(Outcome { text, result, pass })
}

fn wrap(w: &WrapArgs, t: &QuotientTangle) -> Result<Outcome, CliError> {
    let direction = if w.unwrap { WrapDirection::Unwrap } else { WrapDirection::Wrap };
    let before = diagram_invariants(t)?;
    let mut cur = t.clone();
    for _ in 0..w.times {
        cur = apply_axis_wrap_move(&cur, direction)?;
    }
    let after = diagram_invariants(&cur)?;
    let tangle = cur.to_text();
    if let Some(p) = &w.output {
        std::fs::write(p, &tangle).map_err(|e| CliError::Input(format!("cannot write {}: {e}", p.display())))?;
    }
    let text = format!("{tangle}# before: {}# after:  {}", invariants_text(&before), invariants_text(&after));
    let pass = before.axis_linking_2x == after.axis_linking_2x;
    Ok(Outcome { text, result: json!({ "tangle": tangle, "before": value(&before), "after": value(&after) }), pass })
}

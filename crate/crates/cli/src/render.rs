use std::fmt::Write;

use gkz_core::pipeline::Stage;
use gkz_core::ResultReport;

fn matrix(rows: &[Vec<i64>]) -> String {
    rows.iter()
        .map(|r| format!("  [{}]", r.iter().map(|x| format!("{x:>2}")).collect::<Vec<_>>().join(" ")))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Plain-text report.
pub fn text(r: &ResultReport, stage: Stage) -> String {
    let mut out = String::new();
    let w = &mut out;
    if let Some(n) = &r.name {
        let _ = writeln!(w, "# {n}");
    }
    if let Some(u) = &r.u {
        let _ = writeln!(w, "U = {u}");
    }
    if let Some(f) = &r.f {
        let _ = writeln!(w, "F = {f}");
    }
    if let Some(g) = &r.polynomial {
        let _ = writeln!(w, "g = {g}");
    }
    if let Some(p) = &r.prefactor {
        let _ = writeln!(w, "prefactor = {p}");
    }
    if stage == Stage::Symanzik || r.amatrix.is_empty() {
        return out;
    }
    if let Some(c) = r.source_codim {
        let _ = writeln!(w, "codim(source) = {c}");
    }
    if let Some(d) = &r.deformation {
        let _ = writeln!(w, "deformation = {d}");
    }
    let _ = writeln!(w, "A =\n{}", matrix(&r.amatrix));
    let _ = writeln!(w, "codim = {}", r.codim);
    let _ = writeln!(w, "lattice =\n{}", matrix(&r.lattice));
    let _ = writeln!(w, "toric ideal = {}", r.toric_ideal);
    let _ = writeln!(w, "w = {:?}", r.weight);
    let _ = writeln!(w, "initial ideal = {}", r.initial_ideal);
    let _ = writeln!(w, "standard pairs = {{{}}}", r.standard_pairs.join(", "));
    let _ = writeln!(w, "kappa = ({})", r.kappa.join(", "));
    for (i, g) in r.fake_exponents.iter().enumerate() {
        let _ = writeln!(w, "gamma{} = {g}", i + 1);
    }
    for (i, s) in r.series.iter().enumerate() {
        let _ = writeln!(w, "phi{} = {}", i + 1, s.display);
        if let Some(k) = &s.constant {
            let v = k.value.map(|v| format!(" = {v:.12e}")).unwrap_or_default();
            let _ = writeln!(w, "  K{} = {}{v}  [{}]", i + 1, k.expression, k.provenance);
        }
    }
    if let Some(n) = &r.numeric {
        let _ = writeln!(w, "value = {:.15e} (last shell {:.2e}, w = {:?})", n.value, n.tail, n.evaluation_weight);
        if let Some(p) = n.prefactor {
            let _ = writeln!(w, "prefactor value = {p:.15e}");
        }
        if let Some(o) = &n.oracle {
            let _ = writeln!(w, "oracle = {:.15e} +- {:.2e} ({}, {} nodes)", o.value, o.error, o.method, o.nodes);
        }
        if let Some(d) = n.relative_deviation {
            let _ = writeln!(w, "relative deviation = {d:.3e}");
        }
        if let Some(p) = &n.probe {
            let _ = writeln!(w, "deformation probe (target {:.12e}):", p.target);
            for pt in &p.points {
                let _ = writeln!(w, "  c1 = {:.0e}: {:.12e} (rel. error {:.3e})", pt.c1, pt.value, pt.relative_error);
            }
            let _ = writeln!(w, "  monotone: {}", p.monotone);
        }
    }
    for m in &r.warnings {
        let _ = writeln!(w, "warning: {m}");
    }
    out
}

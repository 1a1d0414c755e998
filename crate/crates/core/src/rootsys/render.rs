//! JSON, CSV and TeX renderings of the root tables for one parameter set.

use std::fmt::Write as _;

use serde_json::{json, Value};

use super::tables::{self, Clause, Pattern};
use super::{
    dot_roots, dot_roots_0, r_invariants, s_set_0_any, s_set_any, AlgebraParams, Component,
};

fn clause_json(p: &AlgebraParams, c: &Clause) -> Value {
    json!({
        "pattern": c.pattern,
        "dot": c.pattern.expand(p.k, p.l),
        "progression": c.progression(),
    })
}

fn active<'a>(
    p: &'a AlgebraParams,
    clauses: &'a [Clause],
) -> impl Iterator<Item = &'a Clause> + 'a {
    clauses.iter().filter(|c| c.cond.holds(p.k, p.l))
}

pub fn tables_json(p: &AlgebraParams) -> Value {
    let comp_clauses = |comp| -> Vec<Value> {
        if !p.has_component(comp) {
            return Vec::new();
        }
        active(p, tables::even_clauses(p.family, comp))
            .map(|c| clause_json(p, c))
            .collect()
    };
    let s_sets: Vec<Value> = dot_roots(p)
        .into_iter()
        .filter(|a| !a.is_dot_zero())
        .map(|a| json!({"dot": a, "progression": s_set_any(p, &a)}))
        .collect();
    let s_sets_0 = |comp| -> Vec<Value> {
        dot_roots_0(p, comp)
            .into_iter()
            .filter(|a| !a.is_dot_zero())
            .map(|a| json!({"dot": a, "progression": s_set_0_any(p, comp, &a)}))
            .collect()
    };
    json!({
        "family": p.family,
        "k": p.k,
        "l": p.l,
        "clauses": active(p, tables::root_clauses(p.family)).map(|c| clause_json(p, c)).collect::<Vec<_>>(),
        "even_clauses": {"1": comp_clauses(Component::One), "2": comp_clauses(Component::Two)},
        "dot_roots": dot_roots(p),
        "dot_roots_0": {
            "1": dot_roots_0(p, Component::One),
            "2": dot_roots_0(p, Component::Two),
        },
        "s_sets": s_sets,
        "s_sets_0": {"1": s_sets_0(Component::One), "2": s_sets_0(Component::Two)},
        "r": r_invariants(p).r,
    })
}

/// Columns: `table,pattern,dot,mod,res`. `res` is `;`-separated.
pub fn tables_csv(p: &AlgebraParams) -> String {
    let mut out = String::from("table,pattern,dot,mod,res\n");
    let mut row = |table: &str, pat: Pattern, dot: String, prog: &super::ProgressionSet| {
        let res: Vec<String> = prog.residues().map(|c| c.to_string()).collect();
        let _ = writeln!(
            out,
            "{table},{:?},{dot},{},{}",
            pat,
            prog.modulus(),
            res.join(";")
        );
    };
    for c in active(p, tables::root_clauses(p.family)) {
        row(
            "R",
            c.pattern,
            c.pattern.label().to_string(),
            &c.progression(),
        );
    }
    for comp in p.components() {
        for c in active(p, tables::even_clauses(p.family, comp)) {
            row(
                &format!("R0_{comp}"),
                c.pattern,
                c.pattern.label().to_string(),
                &c.progression(),
            );
        }
    }
    for a in dot_roots(p).into_iter().filter(|a| !a.is_dot_zero()) {
        let pat = Pattern::of(&a).unwrap_or(Pattern::Zero);
        row("S", pat, a.to_string(), &s_set_any(p, &a));
    }
    for comp in p.components() {
        for a in dot_roots_0(p, comp)
            .into_iter()
            .filter(|a| !a.is_dot_zero())
        {
            let pat = Pattern::of(&a).unwrap_or(Pattern::Zero);
            row(
                &format!("S_{comp}"),
                pat,
                a.to_string(),
                &s_set_0_any(p, comp, &a),
            );
        }
    }
    out
}

fn tex_set(pats: &[Pattern]) -> String {
    let parts: Vec<&str> = pats.iter().map(|p| p.tex()).collect();
    format!("\\{{{}\\}}", parts.join(",\\ "))
}

/// Standalone LaTeX document laying out the five tables for one family.
pub fn tables_tex(p: &AlgebraParams) -> String {
    let f = p.family;
    let mut s = String::new();
    let _ = writeln!(s, "\\documentclass{{article}}");
    let _ = writeln!(s, "\\usepackage{{amsmath,amssymb}}");
    let _ = writeln!(s, "\\begin{{document}}");
    let _ = writeln!(
        s,
        "\\section*{{${}$, $k={}$, $\\ell={}$}}",
        f.tex_name(),
        p.k,
        p.l
    );

    let clause_table = |s: &mut String, title: &str, clauses: &[Clause]| {
        let _ = writeln!(s, "\\subsection*{{{title}}}");
        let _ = writeln!(s, "\\begin{{tabular}}{{|c|c|}}\\hline");
        let _ = writeln!(s, "pattern & $\\delta$-coefficients \\\\ \\hline");
        for c in active(p, clauses) {
            let _ = writeln!(
                s,
                "${}$ & ${}$ \\\\ \\hline",
                c.pattern.tex(),
                c.progression().to_tex()
            );
        }
        let _ = writeln!(s, "\\end{{tabular}}");
    };
    clause_table(&mut s, "Roots $R$", tables::root_clauses(f));

    let _ = writeln!(s, "\\subsection*{{Dot roots}}");
    let _ = writeln!(s, "$\\dot R = {}$", tex_set(tables::dot_table(f)));

    let _ = writeln!(s, "\\subsection*{{$S_{{\\dot\\alpha}}$}}");
    let _ = writeln!(s, "\\begin{{tabular}}{{|l|c|}}\\hline");
    for (pat, prog) in tables::s_table(f) {
        let _ = writeln!(
            s,
            "$S_{{{}}}$ & ${}$ \\\\ \\hline",
            pat.tex(),
            tables::row_progression(prog).to_tex()
        );
    }
    let _ = writeln!(s, "\\end{{tabular}}");

    for comp in Component::BOTH {
        if p.has_component(comp) {
            clause_table(
                &mut s,
                &format!("Even part $R_0({comp})$"),
                tables::even_clauses(f, comp),
            );
        } else {
            let _ = writeln!(s, "\\subsection*{{Even part $R_0({comp})$}}\n$\\emptyset$");
        }
    }

    let _ = writeln!(s, "\\subsection*{{Even dot roots}}");
    for comp in Component::BOTH {
        let set = if p.has_component(comp) {
            tex_set(tables::dot_even_table(f, comp))
        } else {
            "\\emptyset".to_string()
        };
        let _ = writeln!(s, "$\\dot R_0({comp}) = {set}$\\\\");
    }

    let _ = writeln!(s, "\\subsection*{{$S_{{\\dot\\alpha}}(i)$}}");
    let _ = writeln!(s, "\\begin{{tabular}}{{|l|c|}}\\hline");
    for comp in Component::BOTH {
        for (pat, prog) in tables::s_even_table(f, comp) {
            let _ = writeln!(
                s,
                "$S_{{{}}}({comp})$ & ${}$ \\\\ \\hline",
                pat.tex(),
                tables::row_progression(prog).to_tex()
            );
        }
    }
    let _ = writeln!(s, "\\end{{tabular}}");
    let _ = writeln!(s, "\\end{{document}}");
    s
}

//! Canonical printer for workspaces: printing then reparsing reproduces the
//! same bindings, and printing twice yields identical text.

use oal_core::poset::{unrank, Poset};

use crate::workspace::Workspace;

fn poset_body(out: &mut String, p: &Poset) {
    if p.len() > 0 {
        out.push_str("  elem");
        for l in p.labels() {
            out.push(' ');
            out.push_str(l);
        }
        out.push('\n');
    }
    for (a, b) in p.cover_pairs() {
        out.push_str(&format!("  le {} {}\n", p.label(a), p.label(b)));
    }
}

/// Renders the workspace in the block grammar, in declaration order.
pub fn print_workspace(ws: &Workspace) -> String {
    let mut out = String::new();
    for e in &ws.signatures {
        out.push_str(&format!("signature {}\n", e.name));
        for op in e.sig.ops() {
            out.push_str(&format!("  op {} {}\n", op.name, op.arity));
        }
        out.push_str("end\n\n");
    }
    for e in &ws.posets {
        out.push_str(&format!("poset {}\n", e.name));
        poset_body(&mut out, &e.poset);
        out.push_str("end\n\n");
    }
    for e in &ws.presentations {
        out.push_str(&format!("presentation {} over {}\n", e.name, e.sig_name));
        if !e.vars.is_empty() {
            out.push_str("  var");
            for v in &e.vars {
                out.push(' ');
                out.push_str(v);
            }
            out.push('\n');
        }
        for ax in e.pres.axioms() {
            out.push_str(&format!("  le {} {}\n", ax.lhs, ax.rhs));
        }
        out.push_str("end\n\n");
    }
    for e in &ws.algebras {
        out.push_str(&format!(
            "algebra {} over {} carrier {}\n",
            e.name, e.sig_name, e.carrier_name
        ));
        let n = e.alg.len();
        for (idx, op) in e.alg.signature().ops().iter().enumerate() {
            let table = e.alg.table(idx);
            let sizes = vec![n; op.arity];
            for (r, &v) in table.iter().enumerate() {
                let tuple = unrank(r, &sizes);
                let args: Vec<&str> = tuple
                    .iter()
                    .map(|&i| e.alg.carrier().label(i))
                    .collect();
                out.push_str(&format!(
                    "  op {} ({}) -> {}\n",
                    op.name,
                    args.join(","),
                    e.alg.carrier().label(v)
                ));
            }
        }
        out.push_str("end\n\n");
    }
    for e in &ws.maps {
        out.push_str(&format!("map {} : {} -> {}\n", e.name, e.dom_name, e.cod_name));
        for i in 0..e.map.dom().len() {
            out.push_str(&format!(
                "  send {} -> {}\n",
                e.map.dom().label(i),
                e.map.cod().label(e.map.apply(i))
            ));
        }
        out.push_str("end\n\n");
    }
    for e in &ws.homs {
        out.push_str(&format!("hom {} : {} -> {}\n", e.name, e.dom_name, e.cod_name));
        for i in 0..e.hom.dom().len() {
            out.push_str(&format!(
                "  send {} -> {}\n",
                e.hom.dom().carrier().label(i),
                e.hom.cod().carrier().label(e.hom.apply(i))
            ));
        }
        out.push_str("end\n\n");
    }
    out
}

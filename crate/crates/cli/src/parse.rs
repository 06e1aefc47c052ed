//! Line-oriented parser for the workspace block grammar. `#` starts a
//! comment; blocks close with `end`. Errors carry the offending line.

use oal_core::algebra::{Homomorphism, OrderedAlgebra};
use oal_core::poset::{rank, MonotoneMap, Poset};
use oal_core::term::{parse_term, Inequation, OpSym, Presentation, Signature};

use crate::workspace::*;

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits a line into chunks at top-level whitespace (parentheses bind).
fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(c);
            }
            c if c.is_whitespace() && depth == 0 => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(source: &'a str) -> Lines<'a> {
        let lines = source
            .lines()
            .enumerate()
            .map(|(i, l)| {
                let l = match l.find('#') {
                    Some(p) => &l[..p],
                    None => l,
                };
                (i + 1, l.trim())
            })
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Lines { lines, pos: 0 }
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let item = self.lines.get(self.pos).copied();
        self.pos += 1;
        item
    }
}

/// Parses workspace source into bindings, resolving and validating
/// everything.
pub fn parse_workspace(source: &str) -> Result<Workspace, ParseError> {
    parse_into(Workspace::default(), source)
}

fn parse_into(mut ws: Workspace, source: &str) -> Result<Workspace, ParseError> {
    let mut lines = Lines::new(source);
    while let Some((lineno, line)) = lines.next() {
        let tokens = split_top_level(line);
        match tokens[0].as_str() {
            "signature" => parse_signature(&mut ws, &tokens, lineno, &mut lines)?,
            "poset" => parse_poset(&mut ws, &tokens, lineno, &mut lines)?,
            "presentation" => parse_presentation(&mut ws, &tokens, lineno, &mut lines)?,
            "algebra" => parse_algebra(&mut ws, &tokens, lineno, &mut lines)?,
            "map" => parse_map(&mut ws, &tokens, lineno, &mut lines)?,
            "hom" => parse_hom(&mut ws, &tokens, lineno, &mut lines)?,
            other => return err(lineno, format!("unknown block `{other}`")),
        }
    }
    Ok(ws)
}

/// Parses additional source into an existing workspace (multiple files).
pub fn parse_more(ws: Workspace, source: &str) -> Result<Workspace, ParseError> {
    parse_into(ws, source)
}

fn check_name(
    ws: &Workspace,
    kind: Kind,
    name: &str,
    lineno: usize,
) -> Result<(), ParseError> {
    if !is_ident(name) {
        return err(lineno, format!("`{name}` is not a valid identifier"));
    }
    let clash = match kind {
        Kind::Signature => ws.signature(name).is_some(),
        Kind::Poset => ws.poset(name).is_some(),
        Kind::Presentation => ws.presentation(name).is_some(),
        Kind::Algebra => ws.algebra(name).is_some(),
        Kind::Map => ws.map(name).is_some(),
        Kind::Hom => ws.hom(name).is_some(),
    };
    if clash {
        return err(lineno, format!("duplicate {kind} `{name}`"));
    }
    Ok(())
}

fn parse_signature(
    ws: &mut Workspace,
    header: &[String],
    lineno: usize,
    lines: &mut Lines,
) -> Result<(), ParseError> {
    if header.len() != 2 {
        return err(lineno, "expected `signature NAME`");
    }
    check_name(ws, Kind::Signature, &header[1], lineno)?;
    let mut ops = Vec::new();
    loop {
        let Some((ln, line)) = lines.next() else {
            return err(lineno, "unterminated signature block");
        };
        let t = split_top_level(line);
        match t[0].as_str() {
            "end" => break,
            "op" if t.len() == 3 => {
                let arity: usize = t[2]
                    .parse()
                    .map_err(|_| ParseError {
                        line: ln,
                        message: format!("bad arity `{}`", t[2]),
                    })?;
                ops.push(OpSym {
                    name: t[1].clone(),
                    arity,
                });
            }
            _ => return err(ln, "expected `op SYM ARITY` or `end`"),
        }
    }
    let sig = Signature::from_symbols(ops).map_err(|e| ParseError {
        line: lineno,
        message: e.to_string(),
    })?;
    ws.signatures.push(SigEntry {
        name: header[1].clone(),
        sig,
    });
    Ok(())
}

fn parse_poset(
    ws: &mut Workspace,
    header: &[String],
    lineno: usize,
    lines: &mut Lines,
) -> Result<(), ParseError> {
    if header.len() != 2 {
        return err(lineno, "expected `poset NAME`");
    }
    check_name(ws, Kind::Poset, &header[1], lineno)?;
    let mut elems: Vec<String> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    loop {
        let Some((ln, line)) = lines.next() else {
            return err(lineno, "unterminated poset block");
        };
        let t = split_top_level(line);
        match t[0].as_str() {
            "end" => break,
            "elem" => {
                for e in &t[1..] {
                    if !is_ident(e) {
                        return err(ln, format!("`{e}` is not a valid element name"));
                    }
                    elems.push(e.clone());
                }
            }
            "le" if t.len() == 3 => {
                let a = elems.iter().position(|e| e == &t[1]).ok_or(ParseError {
                    line: ln,
                    message: format!("unknown element `{}`", t[1]),
                })?;
                let b = elems.iter().position(|e| e == &t[2]).ok_or(ParseError {
                    line: ln,
                    message: format!("unknown element `{}`", t[2]),
                })?;
                pairs.push((a, b));
            }
            _ => return err(ln, "expected `elem ..`, `le A B` or `end`"),
        }
    }
    let poset = Poset::new(elems, &pairs).map_err(|e| ParseError {
        line: lineno,
        message: e.to_string(),
    })?;
    ws.posets.push(PosetEntry {
        name: header[1].clone(),
        poset,
    });
    Ok(())
}

fn parse_presentation(
    ws: &mut Workspace,
    header: &[String],
    lineno: usize,
    lines: &mut Lines,
) -> Result<(), ParseError> {
    if header.len() != 4 || header[2] != "over" {
        return err(lineno, "expected `presentation NAME over SIG`");
    }
    check_name(ws, Kind::Presentation, &header[1], lineno)?;
    let sig = ws
        .signature(&header[3])
        .ok_or(ParseError {
            line: lineno,
            message: format!("unknown signature `{}`", header[3]),
        })?
        .sig
        .clone();
    let mut vars: Vec<String> = Vec::new();
    let mut pres = Presentation::new(sig.clone(), Vec::new()).unwrap();
    loop {
        let Some((ln, line)) = lines.next() else {
            return err(lineno, "unterminated presentation block");
        };
        let t = split_top_level(line);
        match t[0].as_str() {
            "end" => break,
            "var" => {
                for v in &t[1..] {
                    if !is_ident(v) {
                        return err(ln, format!("`{v}` is not a valid variable name"));
                    }
                    vars.push(v.clone());
                }
            }
            kw @ ("le" | "eq") if t.len() == 3 => {
                let lhs = parse_term(&t[1], &sig, &vars).map_err(|e| ParseError {
                    line: ln,
                    message: e.to_string(),
                })?;
                let rhs = parse_term(&t[2], &sig, &vars).map_err(|e| ParseError {
                    line: ln,
                    message: e.to_string(),
                })?;
                // The axiom context is the declared variables it uses.
                let context: Vec<String> = vars
                    .iter()
                    .filter(|v| {
                        lhs.atoms().contains(&v.as_str()) || rhs.atoms().contains(&v.as_str())
                    })
                    .cloned()
                    .collect();
                let ineq = Inequation { context, lhs, rhs };
                let push = if kw == "le" {
                    pres.push_le(ineq)
                } else {
                    pres.push_eq(ineq)
                };
                push.map_err(|e| ParseError {
                    line: ln,
                    message: e.to_string(),
                })?;
            }
            _ => return err(ln, "expected `var ..`, `le T T`, `eq T T` or `end`"),
        }
    }
    ws.presentations.push(PresEntry {
        name: header[1].clone(),
        sig_name: header[3].clone(),
        vars,
        pres,
    });
    Ok(())
}

fn parse_algebra(
    ws: &mut Workspace,
    header: &[String],
    lineno: usize,
    lines: &mut Lines,
) -> Result<(), ParseError> {
    if header.len() != 6 || header[2] != "over" || header[4] != "carrier" {
        return err(lineno, "expected `algebra NAME over SIG carrier POSET`");
    }
    check_name(ws, Kind::Algebra, &header[1], lineno)?;
    let sig = ws
        .signature(&header[3])
        .ok_or(ParseError {
            line: lineno,
            message: format!("unknown signature `{}`", header[3]),
        })?
        .sig
        .clone();
    let carrier = ws
        .poset(&header[5])
        .ok_or(ParseError {
            line: lineno,
            message: format!("unknown poset `{}`", header[5]),
        })?
        .poset
        .clone();
    let n = carrier.len();
    let mut tables: Vec<Vec<Option<usize>>> = sig
        .ops()
        .iter()
        .map(|op| vec![None; n.pow(op.arity as u32)])
        .collect();
    loop {
        let Some((ln, line)) = lines.next() else {
            return err(lineno, "unterminated algebra block");
        };
        let t = split_top_level(line);
        match t[0].as_str() {
            "end" => break,
            // `op SYM (a,b) -> c` or `op SYM -> c` for constants.
            "op" if t.len() >= 4 && t[t.len() - 2] == "->" => {
                let op_idx = sig.op_index(&t[1]).ok_or(ParseError {
                    line: ln,
                    message: format!("unknown operation `{}`", t[1]),
                })?;
                let args_src = if t.len() == 5 { t[2].as_str() } else { "()" };
                if t.len() == 4 && sig.arity(op_idx) != 0 {
                    return err(ln, format!("operation `{}` needs arguments", t[1]));
                }
                let inner = args_src
                    .strip_prefix('(')
                    .and_then(|s| s.strip_suffix(')'))
                    .ok_or(ParseError {
                        line: ln,
                        message: "expected a parenthesized argument tuple".into(),
                    })?;
                let args: Vec<&str> = if inner.trim().is_empty() {
                    Vec::new()
                } else {
                    inner.split(',').map(str::trim).collect()
                };
                if args.len() != sig.arity(op_idx) {
                    return err(
                        ln,
                        format!(
                            "operation `{}` has arity {}, got {} arguments",
                            t[1],
                            sig.arity(op_idx),
                            args.len()
                        ),
                    );
                }
                let mut indices = Vec::with_capacity(args.len());
                for a in &args {
                    indices.push(carrier.index_of(a).ok_or(ParseError {
                        line: ln,
                        message: format!("unknown element `{a}`"),
                    })?);
                }
                let result = carrier.index_of(&t[t.len() - 1]).ok_or(ParseError {
                    line: ln,
                    message: format!("unknown element `{}`", t[t.len() - 1]),
                })?;
                let sizes = vec![n; args.len()];
                tables[op_idx][rank(&indices, &sizes)] = Some(result);
            }
            _ => return err(ln, "expected `op SYM (ARGS) -> E` or `end`"),
        }
    }
    let mut filled = Vec::with_capacity(tables.len());
    for (op, table) in sig.ops().iter().zip(tables) {
        let complete: Option<Vec<usize>> = table.into_iter().collect();
        match complete {
            Some(t) => filled.push(t),
            None => {
                return err(
                    lineno,
                    format!("missing table entries for operation `{}`", op.name),
                )
            }
        }
    }
    let alg = OrderedAlgebra::new(sig, carrier, filled).map_err(|e| ParseError {
        line: lineno,
        message: e.to_string(),
    })?;
    ws.algebras.push(AlgEntry {
        name: header[1].clone(),
        sig_name: header[3].clone(),
        carrier_name: header[5].clone(),
        alg,
    });
    Ok(())
}

fn parse_arrow_header(header: &[String]) -> Option<(String, String, String)> {
    // NAME : DOM -> COD
    if header.len() == 6 && header[2] == ":" && header[4] == "->" {
        Some((header[1].clone(), header[3].clone(), header[5].clone()))
    } else {
        None
    }
}

fn parse_sends(
    lines: &mut Lines,
    lineno: usize,
) -> Result<Vec<(usize, String, String)>, ParseError> {
    let mut sends = Vec::new();
    loop {
        let Some((ln, line)) = lines.next() else {
            return err(lineno, "unterminated block");
        };
        let t = split_top_level(line);
        match t[0].as_str() {
            "end" => return Ok(sends),
            "send" if t.len() == 4 && t[2] == "->" => {
                sends.push((ln, t[1].clone(), t[3].clone()));
            }
            _ => return err(ln, "expected `send A -> B` or `end`"),
        }
    }
}

fn table_from_sends(
    dom: &Poset,
    cod: &Poset,
    sends: &[(usize, String, String)],
    lineno: usize,
) -> Result<Vec<usize>, ParseError> {
    let mut table: Vec<Option<usize>> = vec![None; dom.len()];
    for (ln, a, b) in sends {
        let ia = dom.index_of(a).ok_or(ParseError {
            line: *ln,
            message: format!("unknown element `{a}` in the domain"),
        })?;
        let ib = cod.index_of(b).ok_or(ParseError {
            line: *ln,
            message: format!("unknown element `{b}` in the codomain"),
        })?;
        table[ia] = Some(ib);
    }
    table
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or(ParseError {
                line: lineno,
                message: format!("element `{}` has no image", dom.label(i)),
            })
        })
        .collect()
}

fn parse_map(
    ws: &mut Workspace,
    header: &[String],
    lineno: usize,
    lines: &mut Lines,
) -> Result<(), ParseError> {
    let Some((name, dom_name, cod_name)) = parse_arrow_header(header) else {
        return err(lineno, "expected `map NAME : POSET -> POSET`");
    };
    check_name(ws, Kind::Map, &name, lineno)?;
    let dom = ws
        .poset(&dom_name)
        .ok_or(ParseError {
            line: lineno,
            message: format!("unknown poset `{dom_name}`"),
        })?
        .poset
        .clone();
    let cod = ws
        .poset(&cod_name)
        .ok_or(ParseError {
            line: lineno,
            message: format!("unknown poset `{cod_name}`"),
        })?
        .poset
        .clone();
    let sends = parse_sends(lines, lineno)?;
    let table = table_from_sends(&dom, &cod, &sends, lineno)?;
    let map = MonotoneMap::new(dom, cod, table).map_err(|e| ParseError {
        line: lineno,
        message: e.to_string(),
    })?;
    ws.maps.push(MapEntry {
        name,
        dom_name,
        cod_name,
        map,
    });
    Ok(())
}

fn parse_hom(
    ws: &mut Workspace,
    header: &[String],
    lineno: usize,
    lines: &mut Lines,
) -> Result<(), ParseError> {
    let Some((name, dom_name, cod_name)) = parse_arrow_header(header) else {
        return err(lineno, "expected `hom NAME : ALG -> ALG`");
    };
    check_name(ws, Kind::Hom, &name, lineno)?;
    let dom = ws
        .algebra(&dom_name)
        .ok_or(ParseError {
            line: lineno,
            message: format!("unknown algebra `{dom_name}`"),
        })?
        .alg
        .clone();
    let cod = ws
        .algebra(&cod_name)
        .ok_or(ParseError {
            line: lineno,
            message: format!("unknown algebra `{cod_name}`"),
        })?
        .alg
        .clone();
    let sends = parse_sends(lines, lineno)?;
    let table = table_from_sends(dom.carrier(), cod.carrier(), &sends, lineno)?;
    let hom = Homomorphism::new(dom, cod, table).map_err(|e| ParseError {
        line: lineno,
        message: e.to_string(),
    })?;
    ws.homs.push(HomEntry {
        name,
        dom_name,
        cod_name,
        hom,
    });
    Ok(())
}

//! Command reports: a human-readable rendering and a single self-describing
//! JSON document per invocation. Verdicts map onto the process exit code:
//! 0 affirmative/constructed, 1 negative/violation (with witness),
//! 2 inconclusive/truncated, 3 usage or validation error.

use oal_core::algebra::{Homomorphism, OrderedAlgebra};
use oal_core::poset::{MonotoneMap, Poset};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

pub struct Report {
    pub command: Vec<String>,
    pub verdict: String,
    pub exit: i32,
    pub lines: Vec<String>,
    pub data: Value,
    pub timing_ms: u128,
}

impl Report {
    pub fn new(command: &[String], verdict: impl Into<String>, exit: i32) -> Report {
        Report {
            command: command.to_vec(),
            verdict: verdict.into(),
            exit,
            lines: Vec::new(),
            data: Value::Null,
            timing_ms: 0,
        }
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.lines.push(s.into());
        self
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command.join(" ")));
        out.push_str(&format!("verdict: {}\n", self.verdict));
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out.push_str(&format!("time: {} ms\n", self.timing_ms));
        out.push_str(&format!("exit: {}\n", self.exit));
        out
    }

    pub fn render_json(&self) -> String {
        let doc = json!({
            "command": self.command,
            "verdict": self.verdict,
            "exit": self.exit,
            "data": self.data,
            "timing_ms": self.timing_ms,
        });
        serde_json::to_string_pretty(&doc).expect("report serializes")
    }
}

pub fn poset_json(p: &Poset) -> Value {
    json!({
        "elements": p.labels(),
        "le": p
            .cover_pairs()
            .into_iter()
            .map(|(a, b)| json!([p.label(a), p.label(b)]))
            .collect::<Vec<_>>(),
    })
}

pub fn map_json(m: &MonotoneMap) -> Value {
    json!({
        "dom": poset_json(m.dom()),
        "cod": poset_json(m.cod()),
        "send": (0..m.dom().len())
            .map(|i| json!([m.dom().label(i), m.cod().label(m.apply(i))]))
            .collect::<Vec<_>>(),
    })
}

pub fn algebra_json(a: &OrderedAlgebra) -> Value {
    json!({
        "carrier": poset_json(a.carrier()),
        "ops": a.signature().ops().iter().map(|o| json!([o.name, o.arity])).collect::<Vec<_>>(),
    })
}

pub fn hom_json(h: &Homomorphism) -> Value {
    map_json(h.map())
}

pub fn poset_lines(prefix: &str, p: &Poset) -> Vec<String> {
    let mut out = Vec::new();
    out.push(format!("{prefix}elements: {}", p.labels().join(" ")));
    let covers = p.cover_pairs();
    if covers.is_empty() {
        out.push(format!("{prefix}order: discrete"));
    } else {
        let rendered: Vec<String> = covers
            .iter()
            .map(|&(a, b)| format!("{} < {}", p.label(a), p.label(b)))
            .collect();
        out.push(format!("{prefix}order: {}", rendered.join(", ")));
    }
    out
}

pub fn map_lines(prefix: &str, m: &MonotoneMap) -> Vec<String> {
    let sends: Vec<String> = (0..m.dom().len())
        .map(|i| format!("{}->{}", m.dom().label(i), m.cod().label(m.apply(i))))
        .collect();
    vec![format!("{prefix}{}", sends.join(" "))]
}

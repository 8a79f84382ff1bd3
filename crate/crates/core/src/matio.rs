//! Matrix document emitters: restriction matrices rendered to JSON, CSV,
//! and LaTeX with canonical length-then-lex ordering of Weyl elements.

use serde::Serialize;

use crate::error::Error;
use crate::exactalg::{render_ratfunc, RatFunc, VarMode};
use crate::heckealg::LocClass;
use crate::weyl::{RootSystem, WIdx};

/// A rendered matrix: rows/cols labeled by reduced words, entries in the
/// canonical textual form.
#[derive(Debug, Clone, Serialize)]
pub struct MatrixDoc {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

/// Weyl elements sorted by length then lexicographic reduced word.
pub fn element_order(rs: &RootSystem) -> Vec<WIdx> {
    let mut order: Vec<WIdx> = (0..rs.order()).collect();
    order.sort_by(|&a, &b| {
        (rs.len(a), rs.word(a)).cmp(&(rs.len(b), rs.word(b)))
    });
    order
}

/// Matrix whose rows are family members and columns fixed points.
pub fn matrix_from_classes(rs: &RootSystem, mode: VarMode, classes: &[LocClass]) -> MatrixDoc {
    let order = element_order(rs);
    MatrixDoc {
        rows: order.iter().map(|&w| rs.word_string(w)).collect(),
        cols: order.iter().map(|&v| rs.word_string(v)).collect(),
        entries: order
            .iter()
            .map(|&w| {
                order
                    .iter()
                    .map(|&v| render_ratfunc(rs, mode, &classes[w].vals[v]))
                    .collect()
            })
            .collect(),
    }
}

/// Matrix from an arbitrary entry function on ordered pairs.
pub fn matrix_from_grid<F>(rs: &RootSystem, mode: VarMode, f: F) -> MatrixDoc
where
    F: Fn(WIdx, WIdx) -> RatFunc,
{
    let order = element_order(rs);
    MatrixDoc {
        rows: order.iter().map(|&w| rs.word_string(w)).collect(),
        cols: order.iter().map(|&v| rs.word_string(v)).collect(),
        entries: order
            .iter()
            .map(|&u| {
                order
                    .iter()
                    .map(|&w| render_ratfunc(rs, mode, &f(u, w)))
                    .collect()
            })
            .collect(),
    }
}

impl MatrixDoc {
    pub fn to_json(&self) -> Result<String, Error> {
        serde_json::to_string_pretty(self)
            .map_err(|e| Error::Internal(format!("json: {}", e)))
    }

    pub fn to_csv(&self) -> String {
        let quote = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
        let mut out = String::new();
        out.push_str("row");
        for c in &self.cols {
            out.push(',');
            out.push_str(&quote(c));
        }
        out.push('\n');
        for (r, row) in self.rows.iter().zip(&self.entries) {
            out.push_str(&quote(r));
            for e in row {
                out.push(',');
                out.push_str(&quote(e));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_latex(&self) -> String {
        let mut out = String::new();
        out.push_str("\\begin{array}{l|");
        out.push_str(&"l".repeat(self.cols.len()));
        out.push_str("}\n");
        for c in &self.cols {
            out.push_str(" & ");
            out.push_str(&latex_label(c));
        }
        out.push_str(" \\\\\n\\hline\n");
        for (r, row) in self.rows.iter().zip(&self.entries) {
            out.push_str(&latex_label(r));
            for e in row {
                out.push_str(" & ");
                out.push_str(&latex_entry(e));
            }
            out.push_str(" \\\\\n");
        }
        out.push_str("\\end{array}\n");
        out
    }
}

fn latex_label(word: &str) -> String {
    if word == "e" {
        "e".to_string()
    } else {
        word
            .split('.')
            .map(|s| format!("s_{{{}}}", &s[1..]))
            .collect::<Vec<_>>()
            .join("")
    }
}

/// Convert a canonical entry string to LaTeX: `e[c1,...,cr]` becomes
/// `e^{Σ c_i \alpha_i}`, `a[p1,...,pr]` becomes `\alpha_i^{p_i}` products,
/// exponents keep their braces.
fn latex_entry(s: &str) -> String {
    let mut out = String::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if (c == 'e' || c == 'a') && i + 1 < bytes.len() && bytes[i + 1] as char == '[' {
            let close = s[i..].find(']').map(|k| i + k).unwrap_or(s.len() - 1);
            let coords: Vec<&str> = s[i + 2..close].split(',').collect();
            if c == 'e' {
                out.push_str("e^{");
                let mut first = true;
                for (j, coord) in coords.iter().enumerate() {
                    if *coord == "0" {
                        continue;
                    }
                    let mut term = coord.to_string();
                    if !first && !term.starts_with('-') {
                        out.push('+');
                    }
                    if term == "1" {
                        term.clear();
                    } else if term == "-1" {
                        term = "-".to_string();
                    }
                    out.push_str(&term);
                    out.push_str(&format!("\\alpha_{{{}}}", j + 1));
                    first = false;
                }
                if first {
                    out.push('0');
                }
                out.push('}');
            } else {
                for (j, coord) in coords.iter().enumerate() {
                    if *coord == "0" {
                        continue;
                    }
                    out.push_str(&format!("\\alpha_{{{}}}", j + 1));
                    if *coord != "1" {
                        out.push_str(&format!("^{{{}}}", coord));
                    }
                }
            }
            i = close + 1;
        } else {
            out.push(c);
            i += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stablecalc;

    #[test]
    fn order_and_documents() {
        let rs = RootSystem::build('A', 2).unwrap();
        let order = element_order(&rs);
        let labels: Vec<String> = order.iter().map(|&w| rs.word_string(w)).collect();
        assert_eq!(
            labels,
            vec!["e", "s1", "s2", "s1.s2", "s2.s1", "s1.s2.s1"]
        );
        let minus = stablecalc::stab_minus(&rs);
        let doc = matrix_from_classes(&rs, VarMode::KTheory, &minus);
        let json = doc.to_json().unwrap();
        assert!(json.contains("\"rows\""));
        // deterministic across invocations
        assert_eq!(json, matrix_from_classes(&rs, VarMode::KTheory, &minus).to_json().unwrap());
        let csv = doc.to_csv();
        assert!(csv.starts_with("row,\"e\",\"s1\""));
        let tex = doc.to_latex();
        assert!(tex.contains("s_{1}s_{2}s_{1}"));
        assert!(tex.contains("\\alpha_{1}"));
    }

    #[test]
    fn latex_entry_forms() {
        assert_eq!(latex_entry("1 - e[1,1]"), "1 - e^{\\alpha_{1}+\\alpha_{2}}");
        assert_eq!(latex_entry("q e[-1,0]"), "q e^{-\\alpha_{1}}");
        assert_eq!(latex_entry("a[2,1] h"), "\\alpha_{1}^{2}\\alpha_{2} h");
        assert_eq!(latex_entry("e[0,0]"), "e^{0}");
    }
}

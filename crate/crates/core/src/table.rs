//! Plain, JSON and LaTeX tables of the special sequences.

use std::str::FromStr;

use num_traits::One;
use serde_json::{json, Map, Value};

use crate::degenerate::{alt_sum_table, euler_numbers, euler_poly, stirling1, Method};
use crate::poly::MPoly;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Plain,
    Json,
    Latex,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(Format::Plain),
            "json" => Ok(Format::Json),
            "latex" => Ok(Format::Latex),
            _ => Err(format!("unknown format {s:?} (expected plain, json or latex)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    /// Named indices, e.g. `[("n", 2)]` or `[("k", 1), ("n", 3)]`.
    pub index: Vec<(&'static str, u32)>,
    pub label: String,
    pub latex_label: String,
    pub value: MPoly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub entries: Vec<Entry>,
}

impl Table {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Plain => self
                .entries
                .iter()
                .map(|e| format!("{} = {}\n", e.label, e.value))
                .collect(),
            Format::Json => {
                let rows: Vec<Value> = self
                    .entries
                    .iter()
                    .map(|e| {
                        let index: Map<String, Value> =
                            e.index.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
                        json!({"index": index, "text": e.value.to_string(), "value": e.value.to_json()})
                    })
                    .collect();
                let doc = json!({"table": self.name, "rows": rows});
                format!("{}\n", serde_json::to_string_pretty(&doc).expect("json table"))
            }
            Format::Latex => {
                let mut s = String::from("\\begin{tabular}{ll}\n");
                for e in &self.entries {
                    s.push_str(&format!("${}$ & ${}$ \\\\\n", e.latex_label, e.value.to_latex()));
                }
                s.push_str("\\end{tabular}\n");
                s
            }
        }
    }
}

fn order_suffix(r: u32) -> (String, String) {
    if r == 1 {
        (String::new(), String::new())
    } else {
        (format!("^({r})"), format!("^{{({r})}}"))
    }
}

/// 𝓔ₙ^{(r)}(λ) (`numbers`) or 𝓔ₙ^{(r)}(x|λ) for n ≤ max.
pub fn euler_table(r: u32, max: u32, numbers: bool) -> Table {
    let (sup, tex_sup) = order_suffix(r);
    let one = Rational::one();
    let entries = if numbers {
        euler_numbers(r, max, Method::Recurrence)
            .numbers
            .into_iter()
            .enumerate()
            .map(|(n, value)| Entry {
                index: vec![("n", n as u32)],
                label: format!("E_{n}{sup}(L)"),
                latex_label: format!("\\mathcal{{E}}_{{{n}}}{tex_sup}(\\lambda)"),
                value,
            })
            .collect()
    } else {
        (0..=max)
            .map(|n| Entry {
                index: vec![("n", n)],
                label: format!("E_{n}{sup}(x|L)"),
                latex_label: format!("\\mathcal{{E}}_{{{n}}}{tex_sup}(x\\mid\\lambda)"),
                value: euler_poly(r, n, &MPoly::x(), &one),
            })
            .collect()
    };
    let kind = if numbers { "numbers" } else { "polynomials" };
    Table {
        name: format!("degenerate Euler {kind} of order {r}"),
        entries,
    }
}

/// S₁(n, l) for 0 ≤ l ≤ n ≤ max.
pub fn stirling_table(max: u32) -> Table {
    let mut entries = Vec::new();
    for n in 0..=max {
        for l in 0..=n {
            let v = stirling1(n, l).expect("l <= n");
            entries.push(Entry {
                index: vec![("n", n), ("l", l)],
                label: format!("S1({n},{l})"),
                latex_label: format!("S_{{1}}({n},{l})"),
                value: MPoly::constant(Rational::from_integer(v)),
            });
        }
    }
    Table {
        name: "Stirling numbers of the first kind".into(),
        entries,
    }
}

/// S̃ₖ(n|λ) for k ≤ max_k and each requested n.
pub fn altsum_table(max_k: u32, ns: &[u32]) -> Table {
    let max_n = ns.iter().copied().max().unwrap_or(0);
    let table = alt_sum_table(max_k, max_n, &Rational::one());
    let mut entries = Vec::new();
    for &n in ns {
        for k in 0..=max_k {
            entries.push(Entry {
                index: vec![("k", k), ("n", n)],
                label: format!("S~_{k}({n}|L)"),
                latex_label: format!("\\tilde{{S}}_{{{k}}}({n}\\mid\\lambda)"),
                value: table[k as usize][n as usize].clone(),
            });
        }
    }
    Table {
        name: "alternating degenerate power sums".into(),
        entries,
    }
}

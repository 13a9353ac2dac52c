//! Generalized frieze patterns: the entries `v_{i,i+r}` of a weight matrix
//! laid out in interlaced periodic rows.

mod zigzag;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dissection::wrap;
use crate::poly::{LaurentPoly, VarNames};
use crate::walks::{Flavor, WeightMatrix};

pub use zigzag::{
    find_zigzag, minor, minor_formula, minor_formula_for, minor_formula_weighted, minor_table, zig_pieces, MinorEntry,
    ZigZag,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FriezeError {
    #[error("edge e{edge} is outside 1..={n}")]
    EdgeOutOfRange { edge: usize, n: usize },
    #[error("the zig-zag search needs two distinct edges, got e{0} twice")]
    SameEdge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FriezePattern {
    pub n: usize,
    pub flavor: Flavor,
    /// `rows[r][i-1]` is the entry `(i, i+r)` of the weight matrix.
    pub rows: Vec<Vec<LaurentPoly>>,
}

pub fn build_frieze(w: &WeightMatrix) -> FriezePattern {
    let n = w.n();
    let rows = (0..n)
        .map(|r| (1..=n).map(|i| w.entry(i as i64, (i + r) as i64).clone()).collect())
        .collect();
    FriezePattern { n, flavor: w.flavor(), rows }
}

/// Layout options for [`FriezePattern::render_text`] and
/// [`FriezePattern::render_latex`].
#[derive(Debug, Clone)]
pub struct RenderOptions {
    /// Number of full periods shown; at least 2.
    pub periods: usize,
    /// Include the all-zero row 0.
    pub zero_row: bool,
    /// Entries longer than this are replaced by a label explained in a legend.
    pub max_width: Option<usize>,
    pub names: VarNames,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { periods: 2, zero_row: false, max_width: None, names: VarNames::default() }
    }
}

impl FriezePattern {
    /// Entry in row `r` and column `i`, with `i` taken mod `n`.
    pub fn entry(&self, r: usize, i: i64) -> &LaurentPoly {
        &self.rows[r][wrap(i, self.n) - 1]
    }

    fn shown_rows(&self, opts: &RenderOptions) -> std::ops::Range<usize> {
        if opts.zero_row {
            0..self.n
        } else {
            1..self.n
        }
    }

    /// Texts of the shown cells, with long entries replaced by labels.
    fn cell_texts(&self, opts: &RenderOptions, latex: bool) -> (Vec<Vec<String>>, Vec<(String, String)>) {
        let mut labels: BTreeMap<String, String> = BTreeMap::new();
        let mut legend = Vec::new();
        let texts = self
            .shown_rows(opts)
            .map(|r| {
                self.rows[r]
                    .iter()
                    .map(|p| {
                        let plain = p.to_string_with(&opts.names);
                        let shown = if latex { latex_poly(p, &opts.names) } else { plain.clone() };
                        match opts.max_width {
                            Some(width) if plain.chars().count() > width => {
                                let next = format!("E{}", labels.len() + 1);
                                let label = labels.entry(plain).or_insert_with(|| {
                                    legend.push((next.clone(), shown.clone()));
                                    next
                                });
                                label.clone()
                            }
                            _ => shown,
                        }
                    })
                    .collect()
            })
            .collect();
        (texts, legend)
    }

    /// Diamond-interlaced plain text. Row `r`, column `i` sits at half-cell
    /// position `2i + r`, so every 2×2 minor appears as a diamond. The first
    /// period (`i = 1..n`) is the fundamental domain and is bracketed.
    pub fn render_text(&self, opts: &RenderOptions) -> String {
        let periods = opts.periods.max(2);
        let n = self.n;
        let (texts, legend) = self.cell_texts(opts, false);
        let widest = texts.iter().flatten().map(|t| t.chars().count()).max().unwrap_or(1);
        let cell = widest + 2;
        let half = cell.div_ceil(2) + 1;
        let first_row = self.shown_rows(opts).start;
        let mut lines = Vec::new();
        for (k, row) in texts.iter().enumerate() {
            let r = first_row + k;
            let mut line = String::from("...");
            let mut col = 3 + r * half;
            for i in 0..periods * n {
                let text = &row[i % n];
                let body = if i < n { format!("[{text}]") } else { format!(" {text} ") };
                let start = col + (cell - body.chars().count()) / 2;
                while line.chars().count() < start {
                    line.push(' ');
                }
                line.push_str(body.trim_end());
                col += 2 * half;
            }
            lines.push(line);
        }
        let end = lines.iter().map(|l| l.chars().count()).max().unwrap_or(0) + 2;
        let mut out = String::new();
        for mut line in lines {
            while line.chars().count() < end {
                line.push(' ');
            }
            out.push_str(&line);
            out.push_str("...\n");
        }
        for (label, text) in legend {
            let _ = writeln!(out, "{label} = {text}");
        }
        out
    }

    /// A LaTeX `array` in the same layout, fundamental domain in bold.
    pub fn render_latex(&self, opts: &RenderOptions) -> String {
        let periods = opts.periods.max(2);
        let n = self.n;
        let (texts, legend) = self.cell_texts(opts, true);
        let first_row = self.shown_rows(opts).start;
        let last_row = first_row + texts.len().saturating_sub(1);
        // Slot 0 and the last slot hold \ldots.
        let slots = 2 * periods * n + (last_row - first_row) + 1;
        let mut out = format!("\\begin{{array}}{{{}}}\n", "c".repeat(slots + 2));
        for (k, row) in texts.iter().enumerate() {
            let mut cells = vec![String::new(); slots + 2];
            cells[0] = "\\ldots".into();
            for i in 0..periods * n {
                let text = &row[i % n];
                cells[1 + 2 * i + k] = if i < n { format!("\\mathbf{{{text}}}") } else { text.clone() };
            }
            cells[slots + 1] = "\\ldots".into();
            let _ = writeln!(out, "  {} \\\\", cells.join(" & "));
        }
        out.push_str("\\end{array}\n");
        for (label, text) in legend {
            let _ = writeln!(out, "% {label} = {text}");
        }
        out
    }
}

/// LaTeX for a polynomial: `x_{1}^{2} q_{3}` style, custom names verbatim.
pub fn latex_poly(p: &LaurentPoly, names: &VarNames) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.sorted_terms().into_iter().enumerate() {
        let sign = if c.is_negative() { "-" } else { "+" };
        if k > 0 {
            let _ = write!(out, " {sign} ");
        } else if c.is_negative() {
            out.push('-');
        }
        let abs = c.abs();
        if m.is_one() || !abs.is_one() {
            let _ = write!(out, "{abs}");
        }
        for (t, (v, e)) in m.iter().enumerate() {
            if t > 0 || !abs.is_one() {
                out.push(' ');
            }
            let name = names.name(v);
            let (head, digits) = name.split_at(name.trim_end_matches(|ch: char| ch.is_ascii_digit()).len());
            if digits.is_empty() || head.is_empty() {
                out.push_str(&name);
            } else {
                let _ = write!(out, "{head}_{{{digits}}}");
            }
            if e != 1 {
                let _ = write!(out, "^{{{e}}}");
            }
        }
    }
    out
}

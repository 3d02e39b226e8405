//! Text and CSV rendering with a fixed number of significant digits.
//!
//! Numbers are printed in positional notation (`0.8927440453`,
//! `11.04476365`), rounded half-up from the full decimal expansion. CSV uses
//! `,` separators, `.` decimals and a header row; nothing depends on locale.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::analysis::{ConvergenceTable, CriticalCoupling, HellmannFeynman, SweepPoint};
use crate::error::Error;
use crate::precision::Real;

pub const DEFAULT_SIGNIFICANT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Csv,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Unsupported(format!("unknown format `{other}`"))),
        }
    }
}

/// Decimal digits d₀.d₁d₂… × 10^exp.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Decimal {
    negative: bool,
    digits: Vec<u8>,
    exp: i64,
}

impl Decimal {
    /// Parses `[-]d[.ddd][e±x]`, the shape produced by both `{:e}` and the
    /// big-float `Display`.
    fn parse(s: &str) -> Option<Self> {
        let (negative, s) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (mantissa, exp) = match s.split_once(['e', 'E']) {
            Some((m, e)) => (m, e.trim_start_matches('+').parse::<i64>().ok()?),
            None => (s, 0),
        };
        let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        let mut digits: Vec<u8> = Vec::with_capacity(int.len() + frac.len());
        for c in int.chars().chain(frac.chars()) {
            digits.push(c.to_digit(10)? as u8);
        }
        // exponent of the first digit
        let mut exp = exp + int.len() as i64 - 1;
        while digits.first() == Some(&0) && digits.len() > 1 {
            digits.remove(0);
            exp -= 1;
        }
        if digits.iter().all(|&d| d == 0) {
            return Some(Self {
                negative: false,
                digits: vec![0],
                exp: 0,
            });
        }
        Some(Self { negative, digits, exp })
    }

    fn round(mut self, sig: usize) -> Self {
        if self.digits.len() <= sig {
            self.digits.resize(sig, 0);
            return self;
        }
        let round_up = self.digits[sig] >= 5;
        self.digits.truncate(sig);
        if round_up {
            let mut i = sig;
            loop {
                if i == 0 {
                    self.digits.insert(0, 1);
                    self.digits.truncate(sig);
                    self.exp += 1;
                    break;
                }
                i -= 1;
                if self.digits[i] == 9 {
                    self.digits[i] = 0;
                } else {
                    self.digits[i] += 1;
                    break;
                }
            }
        }
        self
    }

    fn to_fixed(&self) -> String {
        let mut out = String::new();
        if self.negative && self.digits.iter().any(|&d| d != 0) {
            out.push('-');
        }
        let digit = |i: i64| -> char {
            if i >= 0 && (i as usize) < self.digits.len() {
                (b'0' + self.digits[i as usize]) as char
            } else {
                '0'
            }
        };
        let last = self.digits.len() as i64 - 1;
        if self.exp >= 0 {
            for i in 0..=self.exp {
                out.push(digit(i));
            }
            if last > self.exp {
                out.push('.');
                for i in (self.exp + 1)..=last {
                    out.push(digit(i));
                }
            }
        } else {
            out.push_str("0.");
            for _ in 0..(-self.exp - 1) {
                out.push('0');
            }
            for i in 0..=last {
                out.push(digit(i));
            }
        }
        out
    }
}

fn format_scientific(s: &str, sig: usize) -> String {
    match Decimal::parse(s) {
        Some(d) => d.round(sig.max(1)).to_fixed(),
        None => s.to_lowercase(),
    }
}

/// `value` rounded to `sig` significant digits, positional notation.
pub fn format_sig(value: &Real, sig: usize) -> String {
    if !value.is_finite() {
        return value.to_f64().to_string().to_lowercase();
    }
    format_scientific(&value.to_scientific(), sig)
}

pub fn format_sig_f64(value: f64, sig: usize) -> String {
    if !value.is_finite() {
        return value.to_string().to_lowercase();
    }
    // every f64 is a short exact decimal; 40 digits is past the exact expansion
    // of anything with a sane exponent, and the rest are rounding digits
    format_scientific(&format!("{:.40e}", value), sig)
}

fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(String::len).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, w) in widths.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            let cell = row.get(c).map(String::as_str).unwrap_or("");
            let _ = write!(line, "{cell:>w$}");
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn csv(rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn render(rows: &[Vec<String>], comments: &[String], format: Format) -> String {
    match format {
        Format::Csv => csv(rows),
        Format::Text => {
            let mut out = String::new();
            for c in comments {
                let _ = writeln!(out, "# {c}");
            }
            out.push_str(&align(rows));
            out
        }
    }
}

/// Columns `n,w0,…,w{k-1}`; cells beyond the basis size are empty. The exact
/// row, when present, is labelled `exact`.
pub fn render_table(table: &ConvergenceTable, sig: usize, format: Format) -> String {
    let mut rows = Vec::with_capacity(table.rows.len() + 2);
    let mut header = vec![if format == Format::Csv {
        "n".to_string()
    } else {
        "N".to_string()
    }];
    header.extend((0..table.k).map(|j| {
        if format == Format::Csv {
            format!("w{j}")
        } else {
            format!("W{j}")
        }
    }));
    rows.push(header);
    for r in &table.rows {
        let mut row = vec![r.n.to_string()];
        row.extend((0..table.k).map(|j| r.roots.get(j).map(|w| format_sig(w, sig)).unwrap_or_default()));
        rows.push(row);
    }
    if let Some(exact) = &table.exact_row {
        let label = if format == Format::Csv { "exact" } else { "Exact" };
        let mut row = vec![label.to_string()];
        row.extend(exact.iter().map(|e| format_sig_f64(*e, sig)));
        rows.push(row);
    }
    let comments = vec![format!("V(x) = {}, g = {}, a = {}", table.potential, table.g, table.a)];
    render(&rows, &comments, format)
}

/// Columns `j,w`.
pub fn render_roots(roots: &[Real], sig: usize, format: Format, comments: &[String]) -> String {
    let mut rows = vec![vec!["j".to_string(), "w".to_string()]];
    rows.extend(
        roots
            .iter()
            .enumerate()
            .map(|(j, w)| vec![j.to_string(), format_sig(w, sig)]),
    );
    render(&rows, comments, format)
}

/// Columns `a,w0,…`.
pub fn render_width_scan(scan: &[(f64, Vec<Real>)], sig: usize, format: Format) -> String {
    let k = scan.iter().map(|(_, r)| r.len()).max().unwrap_or(0);
    let mut header = vec!["a".to_string()];
    header.extend((0..k).map(|j| format!("w{j}")));
    let mut rows = vec![header];
    for (a, roots) in scan {
        let mut row = vec![a.to_string()];
        row.extend(roots.iter().map(|w| format_sig(w, sig)));
        rows.push(row);
    }
    render(&rows, &[], format)
}

/// Columns `index,energy`.
pub fn render_levels(levels: &[f64], sig: usize, format: Format, comments: &[String]) -> String {
    let mut rows = vec![vec!["index".to_string(), "energy".to_string()]];
    rows.extend(
        levels
            .iter()
            .enumerate()
            .map(|(m, e)| vec![m.to_string(), format_sig_f64(*e, sig)]),
    );
    render(&rows, comments, format)
}

/// Columns `potential,a,n,g0`.
pub fn render_critical(c: &CriticalCoupling, sig: usize, format: Format) -> String {
    match format {
        Format::Text => format!(
            "# V(x) = {}, a = {}, n = {}\ng0 = {}\n",
            c.potential,
            c.a,
            c.n,
            format_sig_f64(c.g0, sig)
        ),
        Format::Csv => csv(&[
            vec!["potential".into(), "a".into(), "n".into(), "g0".into()],
            vec![
                c.potential.to_string(),
                c.a.to_string(),
                c.n.to_string(),
                format_sig_f64(c.g0, sig),
            ],
        ]),
    }
}

/// Columns `g,w0,leading,in_regime,exact`: the variational series and the
/// large-|g| curve side by side. Undefined cells are empty.
pub fn render_sweep(points: &[SweepPoint], sig: usize, format: Format) -> String {
    let mut rows = vec![vec![
        "g".to_string(),
        "w0".to_string(),
        "leading".to_string(),
        "in_regime".to_string(),
        "exact".to_string(),
    ]];
    for p in points {
        rows.push(vec![
            p.g.to_string(),
            format_sig(&p.w0, sig),
            p.leading.map(|v| format_sig_f64(v, sig)).unwrap_or_default(),
            p.in_regime.to_string(),
            p.exact.map(|v| format_sig_f64(v, sig)).unwrap_or_default(),
        ]);
    }
    render(&rows, &[], format)
}

/// Columns `g,h,finite_difference,density,residual`.
pub fn render_hellmann(g: f64, h: f64, hf: &HellmannFeynman, sig: usize, format: Format) -> String {
    let rows = vec![
        vec![
            "g".to_string(),
            "h".to_string(),
            "finite_difference".to_string(),
            "density".to_string(),
            "residual".to_string(),
        ],
        vec![
            g.to_string(),
            h.to_string(),
            format_sig_f64(hf.finite_difference, sig),
            format_sig_f64(hf.density, sig),
            format!("{:.3e}", hf.residual),
        ],
    ];
    render(&rows, &[], format)
}

/// Parses CSV produced by this module into rows of cells.
pub fn parse_csv(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.is_empty())
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

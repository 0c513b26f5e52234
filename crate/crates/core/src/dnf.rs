//! DNF formulas: parse, print, evaluate, convert to truth tables.
//!
//! Text grammar: terms separated by `|`, literals whitespace-separated,
//! literal = `x<index>` or `!x<index>`, indices 1-based. The file format
//! puts `n=<int>` on the first line and the formula on the following
//! line(s).

use crate::error::Error;
use crate::rng::SplitMix64;
use crate::table::{TruthTable, MAX_VARS};
use crate::Result;

/// One term: a conjunction of positive and negated literals, stored as
/// variable bitmasks (bit i-1 = x_i).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DnfTerm {
    pub pos: u32,
    pub neg: u32,
}

impl DnfTerm {
    pub fn literal_count(&self) -> u32 {
        (self.pos | self.neg).count_ones()
    }

    /// Does the term evaluate to 1 on table index `idx`?
    #[inline]
    pub fn satisfied(&self, idx: u32) -> bool {
        idx & self.pos == self.pos && idx & self.neg == 0
    }
}

/// A DNF formula over n variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DnfFormula {
    n: u32,
    terms: Vec<DnfTerm>,
}

impl DnfFormula {
    pub fn new(n: u32, terms: Vec<DnfTerm>) -> Result<DnfFormula> {
        if n == 0 || n > MAX_VARS {
            return Err(Error::domain(format!("n = {n} outside 1..={MAX_VARS}")));
        }
        let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        for (i, t) in terms.iter().enumerate() {
            if t.pos & t.neg != 0 {
                return Err(Error::domain(format!(
                    "term {} contains a contradictory literal",
                    i + 1
                )));
            }
            if t.pos | t.neg == 0 {
                return Err(Error::domain(format!("term {} is empty", i + 1)));
            }
            if (t.pos | t.neg) & !full != 0 {
                return Err(Error::domain(format!(
                    "term {} uses a variable beyond x{n}",
                    i + 1
                )));
            }
        }
        Ok(DnfFormula { n, terms })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn terms(&self) -> &[DnfTerm] {
        &self.terms
    }

    /// Number of terms.
    pub fn size(&self) -> usize {
        self.terms.len()
    }

    /// Maximum number of literals in any term (0 for the empty formula).
    pub fn width(&self) -> u32 {
        self.terms.iter().map(|t| t.literal_count()).max().unwrap_or(0)
    }

    pub fn eval(&self, idx: u32) -> bool {
        self.terms.iter().any(|t| t.satisfied(idx))
    }

    pub fn to_table(&self) -> Result<TruthTable> {
        TruthTable::from_index_fn(self.n, |idx| self.eval(idx))
    }

    /// Formula text, terms joined by ` | `, literals in ascending variable
    /// order.
    pub fn print(&self) -> String {
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let mut lits = Vec::new();
                for var in 1..=self.n {
                    let bit = 1u32 << (var - 1);
                    if t.pos & bit != 0 {
                        lits.push(format!("x{var}"));
                    } else if t.neg & bit != 0 {
                        lits.push(format!("!x{var}"));
                    }
                }
                lits.join(" ")
            })
            .collect();
        terms.join(" | ")
    }

    /// Full file form: `n=<int>` line plus the formula.
    pub fn print_file(&self) -> String {
        format!("n={}\n{}\n", self.n, self.print())
    }

    /// Parse a formula body for a known n. `first_line` offsets the line
    /// numbers in error positions.
    pub fn parse(text: &str, n: u32, first_line: usize) -> Result<DnfFormula> {
        let mut terms = Vec::new();
        let mut pos = 0u32;
        let mut neg = 0u32;
        let mut any_literal = false;
        let mut term_start = (first_line, 1usize);

        let flush = |pos: &mut u32,
                         neg: &mut u32,
                         any: &mut bool,
                         at: (usize, usize),
                         terms: &mut Vec<DnfTerm>|
         -> Result<()> {
            if !*any {
                return Err(Error::Parse {
                    line: at.0,
                    col: at.1,
                    msg: "empty term".to_string(),
                });
            }
            terms.push(DnfTerm { pos: *pos, neg: *neg });
            *pos = 0;
            *neg = 0;
            *any = false;
            Ok(())
        };

        for (li, line) in text.lines().enumerate() {
            let lineno = first_line + li;
            let mut col = 0usize;
            let chars: Vec<char> = line.chars().collect();
            while col < chars.len() {
                let c = chars[col];
                if c.is_whitespace() {
                    col += 1;
                    continue;
                }
                if c == '|' {
                    flush(&mut pos, &mut neg, &mut any_literal, (lineno, col + 1), &mut terms)?;
                    col += 1;
                    term_start = (lineno, col + 1);
                    continue;
                }
                // literal: optional '!' then 'x' then digits
                let lit_col = col + 1;
                let negated = c == '!';
                if negated {
                    col += 1;
                }
                if col >= chars.len() || chars[col] != 'x' {
                    return Err(Error::Parse {
                        line: lineno,
                        col: lit_col,
                        msg: "expected literal of the form x<index> or !x<index>".to_string(),
                    });
                }
                col += 1;
                let digit_start = col;
                while col < chars.len() && chars[col].is_ascii_digit() {
                    col += 1;
                }
                if digit_start == col {
                    return Err(Error::Parse {
                        line: lineno,
                        col: lit_col,
                        msg: "missing variable index".to_string(),
                    });
                }
                let var: u32 = chars[digit_start..col]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| Error::Parse {
                        line: lineno,
                        col: lit_col,
                        msg: "variable index out of range".to_string(),
                    })?;
                if var == 0 || var > n {
                    return Err(Error::Parse {
                        line: lineno,
                        col: lit_col,
                        msg: format!("variable x{var} outside 1..={n}"),
                    });
                }
                let bit = 1u32 << (var - 1);
                if (negated && pos & bit != 0) || (!negated && neg & bit != 0) {
                    return Err(Error::Parse {
                        line: lineno,
                        col: lit_col,
                        msg: format!("contradictory literal for x{var} in one term"),
                    });
                }
                if negated {
                    neg |= bit;
                } else {
                    pos |= bit;
                }
                any_literal = true;
            }
        }
        flush(&mut pos, &mut neg, &mut any_literal, term_start, &mut terms)?;
        DnfFormula::new(n, terms)
    }

    /// Parse the file form (`n=<int>` first line, formula after).
    pub fn parse_file(text: &str) -> Result<DnfFormula> {
        let mut lines = text.splitn(2, '\n');
        let header = lines.next().unwrap_or("").trim();
        let n: u32 = header
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::Parse {
                line: 1,
                col: 1,
                msg: format!("expected n=<int> header, found {header:?}"),
            })?;
        let body = lines.next().unwrap_or("");
        DnfFormula::parse(body, n, 2)
    }

    /// The canonical DNF of f: one width-n term per black point.
    pub fn canonical(f: &TruthTable) -> Result<DnfFormula> {
        let on = f.on_set();
        if on.is_empty() {
            return Err(Error::ZeroWeight);
        }
        let full = (1u32 << f.n()) - 1;
        let terms = on
            .iter()
            .map(|&idx| DnfTerm {
                pos: idx,
                neg: !idx & full,
            })
            .collect();
        DnfFormula::new(f.n(), terms)
    }

    /// Random formula: `size` terms of exactly `width` distinct variables,
    /// signs uniform. Deterministic given the generator state.
    pub fn random(n: u32, size: usize, width: u32, rng: &mut SplitMix64) -> Result<DnfFormula> {
        if width == 0 || width > n {
            return Err(Error::domain(format!("width {width} outside 1..={n}")));
        }
        let mut terms = Vec::with_capacity(size);
        for _ in 0..size {
            let mut vars = 0u32;
            while vars.count_ones() < width {
                vars |= 1 << rng.below(n as u64);
            }
            let mut pos = 0u32;
            let mut neg = 0u32;
            let mut m = vars;
            while m != 0 {
                let bit = m & m.wrapping_neg();
                m &= m - 1;
                if rng.bool() {
                    pos |= bit;
                } else {
                    neg |= bit;
                }
            }
            terms.push(DnfTerm { pos, neg });
        }
        DnfFormula::new(n, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn width_and_size() {
        let f = DnfFormula::parse("x1 x2 | !x1 x3", 3, 1).unwrap();
        assert_eq!(f.width(), 2);
        assert_eq!(f.size(), 2);
        assert!(f.eval(0b011)); // x1 x2
        assert!(f.eval(0b100)); // !x1 x3
        assert!(!f.eval(0b001));
    }

    #[test]
    fn canonical_point_function() {
        let z = 0b1011_0010u32;
        let f = TruthTable::from_on_set(8, &[z]).unwrap();
        let d = DnfFormula::canonical(&f).unwrap();
        assert_eq!(d.size(), 1);
        assert_eq!(d.width(), 8);
        assert_eq!(d.to_table().unwrap(), f);
    }

    #[test]
    fn canonical_recovers_function() {
        let mut rng = SplitMix64::new(3);
        for _ in 0..20 {
            let seed = rng.next_u64();
            let f = TruthTable::from_index_fn(6, |idx| {
                SplitMix64::new(seed ^ idx as u64).next_u64().is_multiple_of(3)
            })
            .unwrap();
            if f.weight() == 0 {
                continue;
            }
            assert_eq!(DnfFormula::canonical(&f).unwrap().to_table().unwrap(), f);
        }
    }

    #[test]
    fn roundtrip_random_formulas() {
        let mut rng = SplitMix64::new(42);
        for _ in 0..100 {
            let n = 2 + rng.below(10) as u32;
            let width = 1 + rng.below(n.min(4) as u64) as u32;
            let size = 1 + rng.below(6) as usize;
            let f = DnfFormula::random(n, size, width, &mut rng).unwrap();
            let text = f.print_file();
            let g = DnfFormula::parse_file(&text).unwrap();
            assert_eq!(f, g);
            assert_eq!(f.to_table().unwrap(), g.to_table().unwrap());
        }
    }

    #[test]
    fn parse_errors() {
        match DnfFormula::parse("x1 | ", 2, 1) {
            Err(Error::Parse { msg, .. }) => assert!(msg.contains("empty term")),
            other => panic!("unexpected: {other:?}"),
        }
        match DnfFormula::parse("x1 !x1", 2, 1) {
            Err(Error::Parse { msg, .. }) => assert!(msg.contains("contradictory")),
            other => panic!("unexpected: {other:?}"),
        }
        match DnfFormula::parse("x9", 2, 1) {
            Err(Error::Parse { msg, .. }) => assert!(msg.contains("x9")),
            other => panic!("unexpected: {other:?}"),
        }
        match DnfFormula::parse("y1", 2, 1) {
            Err(Error::Parse { line: 1, .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
        assert!(DnfFormula::parse_file("m=3\nx1").is_err());
    }

    #[test]
    fn print_matches_grammar() {
        let f = DnfFormula::new(
            3,
            vec![
                DnfTerm { pos: 0b011, neg: 0 },
                DnfTerm { pos: 0b100, neg: 0b001 },
            ],
        )
        .unwrap();
        assert_eq!(f.print(), "x1 x2 | !x1 x3");
    }
}

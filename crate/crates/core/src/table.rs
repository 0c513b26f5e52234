//! Truth-table representation of boolean functions.
//!
//! A function f on n variables is stored as a packed bit vector of 2^n
//! output bits. Input x = (x_1, ..., x_n) maps to table index
//! sum_i x_i * 2^(i-1), i.e. x_1 is the least significant index bit. This
//! convention is fixed so the on-disk format and all derived quantities are
//! bit-exact.

use crate::error::Error;
use crate::restriction::Restriction;
use crate::Result;

/// Hard cap on variable count (2^24-entry tables).
pub const MAX_VARS: u32 = 24;

/// A boolean function on `n` variables as a complete output table.
///
/// Immutable after construction; unused high bits of the last word are
/// always zero so equality and hashing are structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: u32,
    words: Vec<u64>,
}

fn words_for(n: u32) -> usize {
    if n >= 6 {
        1usize << (n - 6)
    } else {
        1
    }
}

impl TruthTable {
    fn empty(n: u32) -> Result<TruthTable> {
        if n > MAX_VARS {
            return Err(Error::TableTooLarge { n, max: MAX_VARS });
        }
        Ok(TruthTable {
            n,
            words: vec![0; words_for(n)],
        })
    }

    /// The all-zero function.
    pub fn zeros(n: u32) -> Result<TruthTable> {
        Self::empty(n)
    }

    /// The all-one function.
    pub fn ones(n: u32) -> Result<TruthTable> {
        let mut t = Self::empty(n)?;
        for w in &mut t.words {
            *w = u64::MAX;
        }
        t.mask_tail();
        Ok(t)
    }

    /// Build from a predicate on table indices.
    pub fn from_index_fn(n: u32, f: impl Fn(u32) -> bool) -> Result<TruthTable> {
        let mut t = Self::empty(n)?;
        for idx in 0..t.size() {
            if f(idx as u32) {
                t.set(idx as u32);
            }
        }
        Ok(t)
    }

    /// Build from the list of inputs mapped to 1.
    pub fn from_on_set(n: u32, on: &[u32]) -> Result<TruthTable> {
        let mut t = Self::empty(n)?;
        for &idx in on {
            if idx as usize >= t.size() {
                return Err(Error::domain(format!(
                    "on-set index {idx} out of range for n = {n}"
                )));
            }
            t.set(idx);
        }
        Ok(t)
    }

    /// Build from black points given as (x_1, ..., x_n) tuples.
    pub fn from_black_points(n: u32, points: &[&[u8]]) -> Result<TruthTable> {
        let mut on = Vec::with_capacity(points.len());
        for p in points {
            if p.len() != n as usize {
                return Err(Error::domain("black point arity mismatch".to_string()));
            }
            let mut idx = 0u32;
            for (i, &b) in p.iter().enumerate() {
                idx |= u32::from(b & 1) << i;
            }
            on.push(idx);
        }
        Self::from_on_set(n, &on)
    }

    fn mask_tail(&mut self) {
        if self.n < 6 {
            let bits = 1u32 << self.n;
            self.words[0] &= (1u64 << bits) - 1;
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of table entries, 2^n.
    pub fn size(&self) -> usize {
        1usize << self.n
    }

    #[inline]
    pub fn get(&self, idx: u32) -> bool {
        debug_assert!((idx as usize) < self.size());
        (self.words[(idx >> 6) as usize] >> (idx & 63)) & 1 == 1
    }

    fn set(&mut self, idx: u32) {
        self.words[(idx >> 6) as usize] |= 1u64 << (idx & 63);
    }

    /// Number of inputs mapped to 1.
    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Some(v) if the function is constant v.
    pub fn constant_value(&self) -> Option<bool> {
        let w = self.weight();
        if w == 0 {
            Some(false)
        } else if w == self.size() as u64 {
            Some(true)
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    /// Ascending table indices of the black points.
    pub fn on_set(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.weight() as usize);
        for (wi, &word) in self.words.iter().enumerate() {
            let mut w = word;
            while w != 0 {
                let b = w.trailing_zeros();
                out.push((wi as u32) * 64 + b);
                w &= w - 1;
            }
        }
        out
    }

    /// Value of variable `var` (1-based) in the input with table index `idx`.
    #[inline]
    pub fn var_bit(idx: u32, var: u32) -> bool {
        (idx >> (var - 1)) & 1 == 1
    }

    /// Subfunction with variable at 0-based position `pos` fixed to `val`.
    /// Remaining variables keep their relative order and are renumbered.
    pub fn cofactor(&self, pos: u32, val: bool) -> TruthTable {
        assert!(pos < self.n, "cofactor position out of range");
        let n_out = self.n - 1;
        let mut out = TruthTable {
            n: n_out,
            words: vec![0; words_for(n_out)],
        };
        if self.n <= 6 {
            let compacted = compress_word(self.words[0], pos, val);
            out.words[0] = compacted as u64;
            out.mask_tail();
            return out;
        }
        if pos >= 6 {
            // Whole words survive: blocks of 2^(pos-6) words, alternating
            // by the fixed bit.
            let stride = 1usize << (pos - 6);
            let pick = if val { stride } else { 0 };
            for (q, w) in out.words.iter_mut().enumerate() {
                let block = q / stride;
                let off = q % stride;
                *w = self.words[block * 2 * stride + pick + off];
            }
        } else {
            // In-word compaction: each output word gathers 32 bits from
            // each of two consecutive input words.
            for (q, w) in out.words.iter_mut().enumerate() {
                let lo = compress_word(self.words[2 * q], pos, val) as u64;
                let hi = compress_word(self.words[2 * q + 1], pos, val) as u64;
                *w = lo | (hi << 32);
            }
        }
        out
    }

    /// Subfunction under a restriction; free variables are renumbered in
    /// ascending original order.
    pub fn restrict(&self, rho: &Restriction) -> Result<TruthTable> {
        if let Some(var) = rho.max_var() {
            if var > self.n {
                return Err(Error::VarOutOfRange { var, n: self.n });
            }
        }
        let mut cur = self.clone();
        // Fix from the highest variable down so earlier positions stay valid.
        for (var, val) in rho.iter().rev() {
            cur = cur.cofactor(var - 1, val);
        }
        Ok(cur)
    }

    /// Pointwise negation.
    pub fn negated(&self) -> TruthTable {
        let mut t = TruthTable {
            n: self.n,
            words: self.words.iter().map(|w| !w).collect(),
        };
        t.mask_tail();
        t
    }

    /// Function x -> f(x XOR flip_mask), i.e. complementing the input
    /// variables selected by `flip_mask`.
    pub fn inputs_flipped(&self, flip_mask: u32) -> TruthTable {
        TruthTable::from_index_fn(self.n, |idx| self.get(idx ^ flip_mask)).unwrap()
    }

    /// Function with variables renamed by `perm`: new variable i reads the
    /// old variable perm[i-1] (1-based values, a permutation of 1..=n).
    pub fn permuted(&self, perm: &[u32]) -> TruthTable {
        assert_eq!(perm.len(), self.n as usize);
        TruthTable::from_index_fn(self.n, |idx| {
            let mut old = 0u32;
            for (new_pos, &old_var) in perm.iter().enumerate() {
                if (idx >> new_pos) & 1 == 1 {
                    old |= 1 << (old_var - 1);
                }
            }
            self.get(old)
        })
        .unwrap()
    }

    // ---- text format ----------------------------------------------------

    /// Serialize in the two-line text format. Functions on more than 16
    /// variables use the hex form, smaller ones the 0/1 form.
    pub fn to_text(&self) -> String {
        if self.n <= 16 {
            self.to_text_bits()
        } else {
            self.to_text_hex()
        }
    }

    pub fn to_text_bits(&self) -> String {
        let mut s = String::with_capacity(self.size() + 8);
        s.push_str(&self.n.to_string());
        s.push('\n');
        for idx in 0..self.size() {
            s.push(if self.get(idx as u32) { '1' } else { '0' });
        }
        s.push('\n');
        s
    }

    pub fn to_text_hex(&self) -> String {
        let digits = self.size().div_ceil(4);
        let mut s = String::with_capacity(digits + 12);
        s.push_str(&self.n.to_string());
        s.push_str("\nhex:");
        for d in 0..digits {
            let mut nib = 0u8;
            for j in 0..4 {
                let idx = d * 4 + j;
                if idx < self.size() && self.get(idx as u32) {
                    nib |= 1 << (3 - j);
                }
            }
            s.push(char::from_digit(nib as u32, 16).unwrap().to_ascii_uppercase());
        }
        s.push('\n');
        s
    }

    /// Parse the two-line text format; the payload form (0/1 or `hex:`)
    /// is auto-detected.
    pub fn parse_text(text: &str) -> Result<TruthTable> {
        let mut lines = text.lines();
        let line1 = lines.next().unwrap_or("").trim();
        let n: u32 = line1.parse().map_err(|_| Error::Parse {
            line: 1,
            col: 1,
            msg: format!("expected a decimal variable count, found {line1:?}"),
        })?;
        if n == 0 || n > MAX_VARS {
            return Err(Error::Parse {
                line: 1,
                col: 1,
                msg: format!("variable count {n} outside 1..={MAX_VARS}"),
            });
        }
        let line2 = lines.next().unwrap_or("").trim();
        let size = 1usize << n;
        let mut t = TruthTable::empty(n)?;
        if let Some(hex) = line2.strip_prefix("hex:") {
            let want = size.div_ceil(4);
            if hex.len() != want {
                return Err(Error::Parse {
                    line: 2,
                    col: 5,
                    msg: format!("expected {want} hex digits, found {}", hex.len()),
                });
            }
            for (d, c) in hex.chars().enumerate() {
                let nib = c.to_digit(16).ok_or(Error::Parse {
                    line: 2,
                    col: 5 + d,
                    msg: format!("invalid hex digit {c:?}"),
                })? as u8;
                for j in 0..4 {
                    let idx = d * 4 + j;
                    if idx < size && (nib >> (3 - j)) & 1 == 1 {
                        t.set(idx as u32);
                    } else if idx >= size && (nib >> (3 - j)) & 1 == 1 {
                        return Err(Error::Parse {
                            line: 2,
                            col: 5 + d,
                            msg: "nonzero padding bits in final hex digit".to_string(),
                        });
                    }
                }
            }
        } else {
            if line2.len() != size {
                return Err(Error::Parse {
                    line: 2,
                    col: 1,
                    msg: format!("expected {size} characters of 0/1, found {}", line2.len()),
                });
            }
            for (idx, c) in line2.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => t.set(idx as u32),
                    _ => {
                        return Err(Error::Parse {
                            line: 2,
                            col: idx + 1,
                            msg: format!("invalid character {c:?} in bit string"),
                        })
                    }
                }
            }
        }
        Ok(t)
    }
}

/// Keep the 32 bits of `w` whose `pos`-th index bit equals `val`, compacted
/// into the low half of the result.
fn compress_word(w: u64, pos: u32, val: bool) -> u32 {
    debug_assert!(pos < 6);
    const MASKS: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0F0F_0F0F_0F0F_0F0F,
        0x00FF_00FF_00FF_00FF,
        0x0000_FFFF_0000_FFFF,
        0x0000_0000_FFFF_FFFF,
    ];
    let mut y = (w >> (u64::from(val) << pos)) & MASKS[pos as usize];
    let mut s = pos;
    while s < 5 {
        y = (y | (y >> (1 << s))) & MASKS[(s + 1) as usize];
        s += 1;
    }
    y as u32
}

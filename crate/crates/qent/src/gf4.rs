//! GF(4) field arithmetic and additive codes over GF(4)^n.
//!
//! GF(4) = {0, 1, ω, ω̄} with ω̄ = ω² = 1 + ω and ω³ = 1. An element is
//! encoded as a bit pair (a, b) meaning aω + bω̄ (note 1 = ω + ω̄), so that
//! vector addition is plain XOR and the ω/ω̄ bit planes of a codeword are
//! exactly the (μ, ν) labels of the corresponding displacement operator.
//!
//! An *additive code* is an additive subgroup of GF(4)^n, given by a set of
//! GF(2)-independent generator rows. Duality is with respect to the trace
//! inner product `x⋆y = Σ Tr(x_i ȳ_i)`, which mirrors the commutator on
//! tensor products of Pauli operators. Self-dual codes are the classical
//! face of `[[n,0,d]]` stabilizer codes and their maximally entangled
//! stabilized states.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use thiserror::Error;

/// Default cap on exhaustive codeword enumeration (2^24 codewords).
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 24;

/// Maximum supported code length (bit-packed coordinates).
pub const MAX_LENGTH: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf4Error {
    #[error("vector lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("zero-length vectors are not allowed")]
    ZeroLength,
    #[error("length {0} exceeds the supported maximum {MAX_LENGTH}")]
    LengthTooLarge(usize),
    #[error("generator row {row} has length {got}, expected {expected}")]
    RowLength {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("codeword enumeration would visit {needed} words, cap is {cap}")]
    EnumerationCap { needed: u64, cap: u64 },
    #[error("{what} index {index} out of range (limit {limit})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },
    #[error("shortening a length-1 code would leave no coordinates")]
    DegenerateLength,
    #[error("code is not self-dual")]
    NotSelfDual,
    #[error("extremal bounds require length n > 1, got {0}")]
    BoundLength(usize),
    #[error("Type II codes have even length, got {0}")]
    TypeIiOddLength(usize),
    #[error("unknown built-in code name: {0}")]
    UnknownBuiltin(String),
    #[error("code file parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// An element of GF(4), stored as the bit pair (ω-part, ω̄-part).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Gf4(u8);

impl Gf4 {
    pub const ZERO: Self = Gf4(0b00);
    /// 1 = ω + ω̄.
    pub const ONE: Self = Gf4(0b11);
    pub const OMEGA: Self = Gf4(0b10);
    pub const OMEGA_BAR: Self = Gf4(0b01);

    /// Build from the (ω-part, ω̄-part) bit pair.
    pub fn from_bits(mu: bool, nu: bool) -> Self {
        Gf4(((mu as u8) << 1) | nu as u8)
    }

    /// ω-part bit (the X label under the Φ correspondence).
    pub fn mu_bit(self) -> bool {
        self.0 & 0b10 != 0
    }

    /// ω̄-part bit (the Z label under the Φ correspondence).
    pub fn nu_bit(self) -> bool {
        self.0 & 0b01 != 0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Conjugation: fixes 0 and 1, exchanges ω and ω̄.
    pub fn conj(self) -> Self {
        Gf4(((self.0 & 1) << 1) | (self.0 >> 1))
    }

    /// Trace map GF(4) → GF(2): Tr(x) = x + x², so Tr(0) = Tr(1) = 0 and
    /// Tr(ω) = Tr(ω̄) = 1.
    pub fn gf2_trace(self) -> u8 {
        (self.0 >> 1) ^ (self.0 & 1)
    }

    fn symbol(self) -> char {
        match self.0 {
            0b00 => '0',
            0b11 => '1',
            0b10 => 'w',
            _ => 'W',
        }
    }

    fn from_symbol(c: char) -> Option<Self> {
        match c {
            '0' => Some(Gf4::ZERO),
            '1' => Some(Gf4::ONE),
            'w' | 'ω' => Some(Gf4::OMEGA),
            'W' => Some(Gf4::OMEGA_BAR),
            _ => None,
        }
    }
}

impl Add for Gf4 {
    type Output = Gf4;

    // characteristic 2: addition is XOR of the bit pairs
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Gf4) -> Gf4 {
        Gf4(self.0 ^ rhs.0)
    }
}

impl Mul for Gf4 {
    type Output = Gf4;

    fn mul(self, rhs: Gf4) -> Gf4 {
        // Index order: 0, ω̄, ω, 1 (value = 2·mu + nu).
        const TABLE: [[u8; 4]; 4] = [
            [0, 0, 0, 0], // 0·x
            [0, 2, 3, 1], // ω̄·x: ω̄ω̄=ω, ω̄ω=1, ω̄·1=ω̄
            [0, 3, 1, 2], // ω·x:  ωω̄=1, ωω=ω̄, ω·1=ω
            [0, 1, 2, 3], // 1·x
        ];
        Gf4(TABLE[self.0 as usize][rhs.0 as usize])
    }
}

impl fmt::Display for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A vector over GF(4)^n, bit-packed into ω and ω̄ planes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Gf4Vec {
    n: usize,
    mu: u64,
    nu: u64,
}

impl Gf4Vec {
    pub fn zero(n: usize) -> Result<Self, Gf4Error> {
        if n == 0 {
            return Err(Gf4Error::ZeroLength);
        }
        if n > MAX_LENGTH {
            return Err(Gf4Error::LengthTooLarge(n));
        }
        Ok(Gf4Vec { n, mu: 0, nu: 0 })
    }

    pub fn from_symbols(symbols: &[Gf4]) -> Result<Self, Gf4Error> {
        let mut v = Gf4Vec::zero(symbols.len())?;
        for (i, &s) in symbols.iter().enumerate() {
            v.set(i, s);
        }
        Ok(v)
    }

    /// Build from the raw (μ, ν) bit planes.
    pub fn from_bit_planes(n: usize, mu: u64, nu: u64) -> Result<Self, Gf4Error> {
        let v = Gf4Vec::zero(n)?;
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Ok(Gf4Vec {
            mu: mu & mask,
            nu: nu & mask,
            ..v
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false // length-0 vectors cannot be constructed
    }

    pub fn get(&self, i: usize) -> Gf4 {
        Gf4::from_bits(self.mu >> i & 1 != 0, self.nu >> i & 1 != 0)
    }

    pub fn set(&mut self, i: usize, x: Gf4) {
        let bit = 1u64 << i;
        if x.mu_bit() {
            self.mu |= bit
        } else {
            self.mu &= !bit
        }
        if x.nu_bit() {
            self.nu |= bit
        } else {
            self.nu &= !bit
        }
    }

    /// ω-part bit plane (μ labels, coordinate i at bit i).
    pub fn mu_bits(&self) -> u64 {
        self.mu
    }

    /// ω̄-part bit plane (ν labels).
    pub fn nu_bits(&self) -> u64 {
        self.nu
    }

    pub fn is_zero(&self) -> bool {
        self.mu == 0 && self.nu == 0
    }

    /// Number of nonzero coordinates.
    pub fn weight(&self) -> usize {
        (self.mu | self.nu).count_ones() as usize
    }

    /// Trace inner product `x⋆y = Σ Tr(x_i ȳ_i) ∈ GF(2)`. Symmetric, and
    /// x⋆x = 0 for every x.
    pub fn trace_inner_product(&self, other: &Gf4Vec) -> Result<u8, Gf4Error> {
        if self.n != other.n {
            return Err(Gf4Error::LengthMismatch(self.n, other.n));
        }
        let t = (self.mu & other.nu).count_ones() + (self.nu & other.mu).count_ones();
        Ok((t & 1) as u8)
    }

    fn word(&self) -> u128 {
        self.mu as u128 | (self.nu as u128) << self.n
    }

    fn from_word(n: usize, w: u128) -> Self {
        let mask = if n == 64 {
            u64::MAX as u128
        } else {
            (1u128 << n) - 1
        };
        Gf4Vec {
            n,
            mu: (w & mask) as u64,
            nu: (w >> n & mask) as u64,
        }
    }
}

impl Add for Gf4Vec {
    type Output = Gf4Vec;

    fn add(self, rhs: Gf4Vec) -> Gf4Vec {
        assert_eq!(self.n, rhs.n, "vector lengths differ");
        Gf4Vec {
            n: self.n,
            mu: self.mu ^ rhs.mu,
            nu: self.nu ^ rhs.nu,
        }
    }
}

impl fmt::Display for Gf4Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.get(i))?;
        }
        Ok(())
    }
}

/// Weight distribution A_0..A_n of an additive code: A_i counts the
/// codewords of weight i. A_0 = 1 and Σ A_i = |C|.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    pub n: usize,
    pub counts: Vec<u64>,
}

impl WeightDistribution {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Type classification of self-dual additive codes: Type II codes have
/// all codeword weights even; everything else is Type I.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodeType {
    TypeI,
    TypeII,
}

/// Built-in generator matrices used throughout the test corpus: the
/// hexacode `[[6,0,4]]`, the EPR pair code `[[2,0,2]]`, its lengthened
/// `[[3,0,2]]` variant, and the shortened hexacode `[[5,0,3]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinCode {
    Hexacode,
    Epr2,
    Triad3,
    Short5,
}

impl FromStr for BuiltinCode {
    type Err = Gf4Error;

    fn from_str(s: &str) -> Result<Self, Gf4Error> {
        match s {
            "hexacode" => Ok(BuiltinCode::Hexacode),
            "epr2" => Ok(BuiltinCode::Epr2),
            "triad3" => Ok(BuiltinCode::Triad3),
            "short5" => Ok(BuiltinCode::Short5),
            other => Err(Gf4Error::UnknownBuiltin(other.to_string())),
        }
    }
}

impl fmt::Display for BuiltinCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BuiltinCode::Hexacode => "hexacode",
            BuiltinCode::Epr2 => "epr2",
            BuiltinCode::Triad3 => "triad3",
            BuiltinCode::Short5 => "short5",
        };
        f.pad(s)
    }
}

/// An additive code over GF(4)^n, stored as a GF(2)-independent list of
/// generator rows. |C| = 2^k where k is the number of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveCode {
    n: usize,
    generators: Vec<Gf4Vec>,
}

impl AdditiveCode {
    /// Build a code from generator rows, dropping GF(2)-dependent rows.
    /// Kept rows retain their original form and order.
    pub fn from_generators(n: usize, rows: &[Gf4Vec]) -> Result<Self, Gf4Error> {
        if n == 0 {
            return Err(Gf4Error::ZeroLength);
        }
        if n > MAX_LENGTH {
            return Err(Gf4Error::LengthTooLarge(n));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Gf4Error::RowLength {
                    row: i,
                    expected: n,
                    got: r.len(),
                });
            }
        }
        let mut kept = Vec::new();
        let mut echelon: Vec<u128> = Vec::new();
        for row in rows {
            if reduce_word(row.word(), &echelon) != 0 {
                echelon.push(row.word());
                echelonize(&mut echelon);
                kept.push(*row);
            }
        }
        Ok(AdditiveCode {
            n,
            generators: kept,
        })
    }

    /// The trivial code {0} of length n.
    pub fn trivial(n: usize) -> Result<Self, Gf4Error> {
        AdditiveCode::from_generators(n, &[])
    }

    /// The full space GF(4)^n.
    pub fn full_space(n: usize) -> Result<Self, Gf4Error> {
        let mut rows = Vec::with_capacity(2 * n);
        for i in 0..n {
            rows.push(Gf4Vec::from_bit_planes(n, 1 << i, 0)?);
            rows.push(Gf4Vec::from_bit_planes(n, 0, 1 << i)?);
        }
        AdditiveCode::from_generators(n, &rows)
    }

    pub fn builtin(which: BuiltinCode) -> AdditiveCode {
        let rows = |lines: &[&str]| -> Vec<Gf4Vec> {
            lines
                .iter()
                .map(|s| {
                    let syms: Vec<Gf4> = s.chars().map(|c| Gf4::from_symbol(c).unwrap()).collect();
                    Gf4Vec::from_symbols(&syms).unwrap()
                })
                .collect()
        };
        match which {
            BuiltinCode::Hexacode => {
                let r = rows(&["1001ww", "010w1w", "001ww1", "w00wWW", "0w0WwW", "00wWWw"]);
                AdditiveCode::from_generators(6, &r).unwrap()
            }
            BuiltinCode::Epr2 => {
                let r = rows(&["11", "ww"]);
                AdditiveCode::from_generators(2, &r).unwrap()
            }
            BuiltinCode::Triad3 => {
                let r = rows(&["110", "www", "101"]);
                AdditiveCode::from_generators(3, &r).unwrap()
            }
            BuiltinCode::Short5 => AdditiveCode::builtin(BuiltinCode::Hexacode)
                .shorten(0, 0)
                .unwrap(),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn generators(&self) -> &[Gf4Vec] {
        &self.generators
    }

    /// log2 of the codeword count.
    pub fn k_classical(&self) -> usize {
        self.generators.len()
    }

    pub fn codeword_count(&self) -> u64 {
        1u64 << self.generators.len()
    }

    /// Iterate every codeword (2^k of them) by Gray-code stepping, starting
    /// from the zero word.
    pub fn iter_codewords(&self) -> impl Iterator<Item = Gf4Vec> + '_ {
        let k = self.generators.len();
        let mut current = Gf4Vec {
            n: self.n,
            mu: 0,
            nu: 0,
        };
        (0u64..1 << k).map(move |i| {
            if i > 0 {
                let g = self.generators[i.trailing_zeros() as usize];
                current = current + g;
            }
            current
        })
    }

    fn check_cap(&self, cap: u64) -> Result<(), Gf4Error> {
        let needed = self.codeword_count();
        if needed > cap {
            return Err(Gf4Error::EnumerationCap { needed, cap });
        }
        Ok(())
    }

    /// Exact weight distribution by exhaustive codeword enumeration.
    pub fn weight_distribution(&self) -> Result<WeightDistribution, Gf4Error> {
        self.weight_distribution_capped(DEFAULT_ENUMERATION_CAP)
    }

    pub fn weight_distribution_capped(&self, cap: u64) -> Result<WeightDistribution, Gf4Error> {
        self.check_cap(cap)?;
        let mut counts = vec![0u64; self.n + 1];
        for w in self.iter_codewords() {
            counts[w.weight()] += 1;
        }
        Ok(WeightDistribution { n: self.n, counts })
    }

    /// Minimum weight over nonzero codewords; `n + 1` is returned as a
    /// sentinel for the trivial code {0}, which has none.
    pub fn minimum_weight(&self) -> Result<usize, Gf4Error> {
        self.minimum_weight_capped(DEFAULT_ENUMERATION_CAP)
    }

    pub fn minimum_weight_capped(&self, cap: u64) -> Result<usize, Gf4Error> {
        self.check_cap(cap)?;
        let min = self
            .iter_codewords()
            .filter(|w| !w.is_zero())
            .map(|w| w.weight())
            .min();
        Ok(min.unwrap_or(self.n + 1))
    }

    /// Membership test by reduction against the generator span.
    pub fn contains(&self, v: &Gf4Vec) -> bool {
        if v.len() != self.n {
            return false;
        }
        let mut basis: Vec<u128> = self.generators.iter().map(|g| g.word()).collect();
        echelonize(&mut basis);
        reduce_word(v.word(), &basis) == 0
    }

    /// The dual code C^⊥ = {x : x⋆c = 0 for all c ∈ C}, computed by solving
    /// the induced GF(2) linear system on the (μ, ν) bit planes.
    pub fn dual(&self) -> AdditiveCode {
        // x⋆c = ⟨x_mu, c_nu⟩ + ⟨x_nu, c_mu⟩, so the constraint row for c
        // over the 2n-bit unknown (x_mu | x_nu) is (c_nu | c_mu).
        let constraints: Vec<u128> = self
            .generators
            .iter()
            .map(|c| c.nu as u128 | (c.mu as u128) << self.n)
            .collect();
        let null = nullspace(&constraints, 2 * self.n);
        let rows: Vec<Gf4Vec> = null
            .into_iter()
            .map(|w| Gf4Vec::from_word(self.n, w))
            .collect();
        AdditiveCode::from_generators(self.n, &rows).expect("nullspace rows are valid")
    }

    /// C ⊆ C^⊥: every pair of generators is ⋆-orthogonal.
    pub fn is_self_orthogonal(&self) -> bool {
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i..] {
                if a.trace_inner_product(b).unwrap() != 0 {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_self_dual(&self) -> bool {
        self.generators.len() == self.n && self.is_self_orthogonal()
    }

    /// Minimum distance in the stabilizer sense: the minimum weight of
    /// C^⊥ \ C (for a self-dual code, of C itself, following the `[[n,0,d]]`
    /// convention).
    pub fn distance(&self) -> Result<usize, Gf4Error> {
        self.distance_capped(DEFAULT_ENUMERATION_CAP)
    }

    pub fn distance_capped(&self, cap: u64) -> Result<usize, Gf4Error> {
        let dual = self.dual();
        dual.check_cap(cap)?;
        if dual.generators.len() == self.generators.len() {
            // self-dual: C^⊥ \ C is empty
            return self.minimum_weight_capped(cap);
        }
        let min = dual
            .iter_codewords()
            .filter(|w| !w.is_zero() && !self.contains(w))
            .map(|w| w.weight())
            .min();
        Ok(min.unwrap_or(self.n + 1))
    }

    /// Purity of the induced quantum code: no nonzero vector of C^⊥ has
    /// weight below the distance. Self-dual codes are pure by convention.
    pub fn is_pure(&self) -> Result<bool, Gf4Error> {
        if self.is_self_dual() {
            return Ok(true);
        }
        let d = self.distance()?;
        let dual_min = self.dual().minimum_weight()?;
        Ok(dual_min >= d)
    }

    /// Type I / Type II classification; only defined for self-dual codes.
    pub fn code_type(&self) -> Result<CodeType, Gf4Error> {
        if !self.is_self_dual() {
            return Err(Gf4Error::NotSelfDual);
        }
        let wd = self.weight_distribution()?;
        let all_even = wd
            .counts
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || i % 2 == 0);
        Ok(if all_even {
            CodeType::TypeII
        } else {
            CodeType::TypeI
        })
    }

    /// Delete generator row `row` and coordinate column `col`.
    pub fn shorten(&self, row: usize, col: usize) -> Result<AdditiveCode, Gf4Error> {
        if row >= self.generators.len() {
            return Err(Gf4Error::IndexOutOfRange {
                what: "row",
                index: row,
                limit: self.generators.len(),
            });
        }
        if col >= self.n {
            return Err(Gf4Error::IndexOutOfRange {
                what: "column",
                index: col,
                limit: self.n,
            });
        }
        if self.n == 1 {
            return Err(Gf4Error::DegenerateLength);
        }
        let rows: Vec<Gf4Vec> = self
            .generators
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != row)
            .map(|(_, g)| {
                let mut v = Gf4Vec::zero(self.n - 1).unwrap();
                let mut j = 0;
                for i in 0..self.n {
                    if i != col {
                        v.set(j, g.get(i));
                        j += 1;
                    }
                }
                v
            })
            .collect();
        AdditiveCode::from_generators(self.n - 1, &rows)
    }

    /// True when the two codes have the same codeword set.
    pub fn eq_codewords(&self, other: &AdditiveCode) -> bool {
        self.n == other.n
            && self.generators.len() == other.generators.len()
            && self.generators.iter().all(|g| other.contains(g))
    }

    /// Serialize in the code file format: a `n=<int>` header line followed
    /// by one generator per line as space-separated symbols from {0,1,w,W}.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for g in &self.generators {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }

    /// Parse the code file format accepted by [`Self::to_file_string`];
    /// symbols on a generator line may be contiguous or space-separated.
    pub fn parse_file_str(text: &str) -> Result<AdditiveCode, Gf4Error> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or_else(|| Gf4Error::Parse {
            line: 0,
            msg: "empty file".into(),
        })?;
        let n: usize = header
            .strip_prefix("n=")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Gf4Error::Parse {
                line: hline,
                msg: format!("expected `n=<int>` header, got `{header}`"),
            })?;
        let mut rows = Vec::new();
        for (lineno, line) in lines {
            let mut syms = Vec::new();
            for tok in line.split_whitespace() {
                for c in tok.chars() {
                    let s = Gf4::from_symbol(c).ok_or_else(|| Gf4Error::Parse {
                        line: lineno,
                        msg: format!("bad symbol `{c}` (expected 0, 1, w, or W)"),
                    })?;
                    syms.push(s);
                }
            }
            if syms.len() != n {
                return Err(Gf4Error::Parse {
                    line: lineno,
                    msg: format!("generator has {} symbols, expected {}", syms.len(), n),
                });
            }
            rows.push(Gf4Vec::from_symbols(&syms).map_err(|e| Gf4Error::Parse {
                line: lineno,
                msg: e.to_string(),
            })?);
        }
        AdditiveCode::from_generators(n, &rows)
    }
}

/// Extremal upper bound on the minimum weight of a self-dual additive code
/// of length n: the d_I / d_II bounds.
pub fn extremal_bound(n: usize, ty: CodeType) -> Result<usize, Gf4Error> {
    if n <= 1 {
        return Err(Gf4Error::BoundLength(n));
    }
    match ty {
        CodeType::TypeII => {
            if !n.is_multiple_of(2) {
                return Err(Gf4Error::TypeIiOddLength(n));
            }
            Ok(2 * (n / 6) + 2)
        }
        CodeType::TypeI => Ok(match n % 6 {
            0 => 2 * (n / 6) + 1,
            5 => 2 * (n / 6) + 3,
            _ => 2 * (n / 6) + 2,
        }),
    }
}

// --- GF(2) word algebra -------------------------------------------------

fn reduce_word(mut w: u128, echelon: &[u128]) -> u128 {
    for &b in echelon {
        let lead = 127 - b.leading_zeros() as usize;
        if w >> lead & 1 == 1 {
            w ^= b;
        }
    }
    w
}

/// Bring the basis into row echelon form (unique leading bits), dropping
/// zero rows. Rows are mutated, not reordered relative to leading bit.
fn echelonize(rows: &mut Vec<u128>) {
    let mut out: Vec<u128> = Vec::with_capacity(rows.len());
    for &r in rows.iter() {
        let mut w = r;
        for &b in &out {
            let lead = 127 - b.leading_zeros() as usize;
            if w >> lead & 1 == 1 {
                w ^= b;
            }
        }
        if w != 0 {
            out.push(w);
            out.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    *rows = out;
}

/// Basis of {x : ⟨row, x⟩ = 0 mod 2 for every constraint row}, over
/// `cols` bit columns.
fn nullspace(constraints: &[u128], cols: usize) -> Vec<u128> {
    // Gauss-eliminate the constraint matrix, tracking pivot columns.
    let mut rows: Vec<u128> = constraints.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pos) = (rank..rows.len()).find(|&r| rows[r] >> col & 1 == 1) else {
            continue;
        };
        rows.swap(rank, pos);
        let pivot_row = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && *row >> col & 1 == 1 {
                *row ^= pivot_row;
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v: u128 = 1 << f;
        // back-substitute pivot variables
        for (r, &pc) in pivots.iter().enumerate() {
            if rows[r] >> f & 1 == 1 {
                v |= 1 << pc;
            }
        }
        basis.push(v);
    }
    basis
}

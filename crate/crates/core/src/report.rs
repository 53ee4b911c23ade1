//! Bound reports shared by the Nekrasov and B-Nekrasov modules.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

/// Which bound produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    /// Epsilon-parameterized bound for Nekrasov matrices (Garcia-Esnaola and Pena).
    GpNekrasov,
    /// Parameter-free bound `max_i eta_i / min{m_ii - h_i, 1}`.
    NewNekrasov,
    /// Epsilon-parameterized bound for B-Nekrasov matrices (Garcia-Esnaola and Pena).
    GpBNekrasov,
    /// Parameter-free bound `(n - 1) max_i eta_i(B+) / min{b_ii - h_i(B+), 1}`.
    NewBNekrasov,
    /// Kolotilina's bound on `||A^{-1}||_inf` for a single Nekrasov matrix.
    Kolotilina,
}

impl Theorem {
    /// Stable snake_case name used in machine-readable output.
    pub fn name(self) -> &'static str {
        match self {
            Theorem::GpNekrasov => "gp_nekrasov",
            Theorem::NewNekrasov => "new_nekrasov",
            Theorem::GpBNekrasov => "gp_bnekrasov",
            Theorem::NewBNekrasov => "new_bnekrasov",
            Theorem::Kolotilina => "kolotilina",
        }
    }

    /// Whether the bound takes an epsilon parameter.
    pub fn is_parameterized(self) -> bool {
        matches!(self, Theorem::GpNekrasov | Theorem::GpBNekrasov)
    }

    /// Whether the bound certifies `max_d ||(I - D + DM)^{-1}||_inf`
    /// (Kolotilina only bounds `||M^{-1}||_inf`).
    pub fn bounds_lcp_constant(self) -> bool {
        !matches!(self, Theorem::Kolotilina)
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Why a bound does not apply. Row numbers are 1-based.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Inapplicable {
    NotNekrasov,
    NonPositiveDiagonal,
    /// Row `i < n` has no nonzero entry to the right of the diagonal.
    ZeroUpperRow(usize),
    EpsilonOutOfRange,
    /// Some `s_i` (or the minimum of them) vanished.
    DegenerateS,
    NotBNekrasov,
    /// Row `i < n` has no entry right of the diagonal strictly below `r_i+`.
    NoStrictEntry(usize),
    /// `w_i` is not strictly positive.
    WZero(usize),
    /// `B+ W` is not a strictly diagonally dominant Z-matrix.
    BbarNotSddZ,
    /// The construction needs more rows than the matrix has.
    DimensionTooSmall,
}

impl fmt::Display for Inapplicable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Inapplicable::NotNekrasov => f.write_str("NotNekrasov"),
            Inapplicable::NonPositiveDiagonal => f.write_str("NonPositiveDiagonal"),
            Inapplicable::ZeroUpperRow(i) => write!(f, "ZeroUpperRow({i})"),
            Inapplicable::EpsilonOutOfRange => f.write_str("EpsilonOutOfRange"),
            Inapplicable::DegenerateS => f.write_str("DegenerateS"),
            Inapplicable::NotBNekrasov => f.write_str("NotBNekrasov"),
            Inapplicable::NoStrictEntry(i) => write!(f, "NoStrictEntry({i})"),
            Inapplicable::WZero(i) => write!(f, "WZero({i})"),
            Inapplicable::BbarNotSddZ => f.write_str("BbarNotSDDZ"),
            Inapplicable::DimensionTooSmall => f.write_str("DimensionTooSmall"),
        }
    }
}

/// An upper bound computed by one theorem, or the reason it does not apply.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub theorem: Theorem,
    /// The bound value (always `> 0`) or why it is unavailable.
    pub outcome: Result<f64, Inapplicable>,
    pub epsilon: Option<f64>,
    /// Named intermediate vectors (`w`, `s`, `h`, `z`, `eta`, `beta`, `delta`, ...).
    pub intermediates: BTreeMap<&'static str, Vec<f64>>,
}

impl BoundReport {
    pub(crate) fn new(theorem: Theorem, epsilon: Option<f64>) -> Self {
        Self {
            theorem,
            outcome: Err(Inapplicable::DimensionTooSmall),
            epsilon,
            intermediates: BTreeMap::new(),
        }
    }

    pub(crate) fn reject(mut self, why: Inapplicable) -> Self {
        self.outcome = Err(why);
        self
    }

    pub(crate) fn with(mut self, name: &'static str, v: Vec<f64>) -> Self {
        self.intermediates.insert(name, v);
        self
    }

    pub(crate) fn accept(mut self, value: f64) -> Self {
        self.outcome = Ok(value);
        self
    }

    pub fn applicable(&self) -> bool {
        self.outcome.is_ok()
    }

    pub fn value(&self) -> Option<f64> {
        self.outcome.ok()
    }

    pub fn reason(&self) -> Option<Inapplicable> {
        self.outcome.err()
    }

    pub fn intermediate(&self, name: &str) -> Option<&[f64]> {
        self.intermediates.get(name).map(Vec::as_slice)
    }
}

//! Parameter sweeps over separation (or, for scalene triangles, the shift of
//! detector B) and their CSV serialization.

use std::collections::BTreeSet;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::elements::{perturbativity_check, DetectorParams, PairElements};
use crate::error::{Error, Result};
use crate::linalg::Pair;
use crate::three_detector::{
    assemble_three, coherence_l1_three, rec_three, tripartite_negativity, tripartite_negativity_numeric, TriangleConfig,
};
use crate::two_detector::{assemble_two, coherence_l1_two, negativity_two, rec_two};

pub const CSV_HEADER: &str = "config,lambda,omega_sigma,L_over_sigma,D_over_sigma,P,C_AB,C_AC,C_BC,\
absX_AB,absX_AC,absX_BC,coherence_l1,coherence_rec,negativity,tripartite_negativity,warnings";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConfigKind {
    Two,
    Equilateral,
    Linear,
    Scalene,
}

impl ConfigKind {
    pub const ALL: [ConfigKind; 4] =
        [ConfigKind::Two, ConfigKind::Equilateral, ConfigKind::Linear, ConfigKind::Scalene];

    pub fn name(self) -> &'static str {
        match self {
            ConfigKind::Two => "two",
            ConfigKind::Equilateral => "equilateral",
            ConfigKind::Linear => "linear",
            ConfigKind::Scalene => "scalene",
        }
    }

    pub fn sweeps_shift(self) -> bool {
        self == ConfigKind::Scalene
    }
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConfigKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConfigKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            Error::InvalidSweep(format!("unknown configuration '{s}' (two, equilateral, linear, scalene)"))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Measure {
    Elements,
    L1,
    Rec,
    Negativity,
    TripartiteNegativity,
}

impl Measure {
    pub const ALL: [Measure; 5] =
        [Measure::Elements, Measure::L1, Measure::Rec, Measure::Negativity, Measure::TripartiteNegativity];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Elements => "elements",
            Measure::L1 => "l1",
            Measure::Rec => "rec",
            Measure::Negativity => "negativity",
            Measure::TripartiteNegativity => "tripartite_negativity",
        }
    }

    pub fn all() -> BTreeSet<Measure> {
        Measure::ALL.into_iter().collect()
    }

    /// Comma-separated list such as `l1,rec`.
    pub fn parse_list(s: &str) -> Result<BTreeSet<Measure>> {
        s.split(',').map(|m| m.trim().parse()).collect()
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidSweep(format!("unknown measure '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub config: ConfigKind,
    pub coupling: f64,
    pub gaps: Vec<f64>,
    /// Range of `L / sigma`, or of `D / sigma` for scalene sweeps.
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    /// `L_AC / sigma`, scalene only.
    pub lac: Option<f64>,
    pub measures: BTreeSet<Measure>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSweep(msg));
        if self.steps < 2 {
            return bad(format!("steps must be at least 2, got {}", self.steps));
        }
        if !(self.coupling.is_finite() && self.coupling > 0.0) {
            return bad(format!("coupling must be positive, got {}", self.coupling));
        }
        if self.gaps.is_empty() {
            return bad("at least one gap is required".into());
        }
        if let Some(g) = self.gaps.iter().find(|g| !g.is_finite()) {
            return bad(format!("gap must be finite, got {g}"));
        }
        if !(self.min.is_finite() && self.max.is_finite() && self.min < self.max) {
            return bad(format!("range must satisfy min < max, got [{}, {}]", self.min, self.max));
        }
        if self.measures.is_empty() {
            return bad("no measures selected".into());
        }
        if self.config.sweeps_shift() {
            if self.min < 0.0 {
                return bad(format!("shift range must start at or above 0, got {}", self.min));
            }
            match self.lac {
                Some(l) if l.is_finite() && l > 0.0 => {}
                Some(l) => return bad(format!("L_AC must be positive, got {l}")),
                None => return bad("scalene sweeps need L_AC".into()),
            }
        } else if self.min <= 0.0 {
            return bad(format!("separation range must start above 0, got {}", self.min));
        }
        Ok(())
    }

    /// Evenly spaced sweep values, endpoints included.
    pub fn grid(&self) -> Vec<f64> {
        let span = self.max - self.min;
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.max } else { self.min + span * (i as f64 / last) })
            .collect()
    }
}

/// One evaluated grid point. `None` marks a column that does not apply or
/// could not be computed (the reason is then in `warnings`).
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRecord {
    pub config: ConfigKind,
    pub coupling: f64,
    pub gap: f64,
    /// `L / sigma`; `L_AC / sigma` for scalene.
    pub separation: f64,
    /// `D / sigma`, scalene only.
    pub shift: Option<f64>,
    pub p: Option<f64>,
    /// `(AB, AC, BC)`.
    pub c: [Option<f64>; 3],
    pub abs_x: [Option<f64>; 3],
    pub coherence_l1: Option<f64>,
    pub coherence_rec: Option<f64>,
    pub negativity: Option<f64>,
    pub tripartite_negativity: Option<f64>,
    pub warnings: Vec<String>,
}

impl SweepRecord {
    fn empty(config: ConfigKind, coupling: f64, gap: f64, separation: f64, shift: Option<f64>) -> Self {
        SweepRecord {
            config,
            coupling,
            gap,
            separation,
            shift,
            p: None,
            c: [None; 3],
            abs_x: [None; 3],
            coherence_l1: None,
            coherence_rec: None,
            negativity: None,
            tripartite_negativity: None,
            warnings: Vec::new(),
        }
    }

    /// Stores a computed value, demoting errors and non-finite results to warnings.
    fn put(&mut self, column: &str, value: Result<f64>) -> Option<f64> {
        match value {
            Ok(v) if v.is_finite() => Some(v),
            Ok(v) => {
                self.warnings.push(format!("{column}: non-finite {v}"));
                None
            }
            Err(e) => {
                self.warnings.push(format!("{column}: {e}"));
                None
            }
        }
    }

    fn record_elements(&mut self, slots: &[(usize, &PairElements)]) {
        for &(slot, e) in slots {
            self.c[slot] = Some(e.c);
            self.abs_x[slot] = Some(e.x.norm());
        }
        self.p = slots.first().map(|(_, e)| e.p);
    }

    fn record_perturbativity(&mut self, pairs: &[(Pair, &PairElements)], labelled: bool) {
        for (pair, e) in pairs {
            for tag in perturbativity_check(e).tags() {
                if labelled {
                    self.warnings.push(format!("{pair}:{tag}"));
                } else {
                    self.warnings.push(tag);
                }
            }
        }
    }
}

/// Evaluates one grid point. `variable` is `L / sigma`, or `D / sigma` for
/// scalene configurations (with `lac` required).
pub fn evaluate_point(
    config: ConfigKind,
    coupling: f64,
    gap: f64,
    variable: f64,
    lac: Option<f64>,
    measures: &BTreeSet<Measure>,
) -> SweepRecord {
    let (separation, shift) = match config {
        ConfigKind::Scalene => (lac.unwrap_or(f64::NAN), Some(variable)),
        _ => (variable, None),
    };
    let mut record = SweepRecord::empty(config, coupling, gap, separation, shift);
    let params = match DetectorParams::new(coupling, gap) {
        Ok(p) => p,
        Err(e) => {
            record.warnings.push(format!("error: {e}"));
            return record;
        }
    };
    if params.strong_coupling() {
        record.warnings.push("strong-coupling".into());
    }
    let wants = |m: Measure| measures.contains(&m);

    if config == ConfigKind::Two {
        let elems = match PairElements::compute(&params, separation) {
            Ok(e) => e,
            Err(e) => {
                record.warnings.push(format!("error: {e}"));
                return record;
            }
        };
        record.record_perturbativity(&[(Pair::AB, &elems)], false);
        let state = assemble_two(elems);
        if wants(Measure::Elements) {
            record.record_elements(&[(0, &elems)]);
        }
        if wants(Measure::L1) {
            record.coherence_l1 = record.put("coherence_l1", Ok(coherence_l1_two(&state)));
        }
        if wants(Measure::Rec) {
            record.coherence_rec = record.put("coherence_rec", rec_two(&state).map(|r| r.bits));
        }
        if wants(Measure::Negativity) {
            record.negativity = record.put("negativity", Ok(negativity_two(&state)));
        }
        return record;
    }

    let triangle = match config {
        ConfigKind::Equilateral => TriangleConfig::Equilateral { separation },
        ConfigKind::Linear => TriangleConfig::Linear { separation },
        _ => TriangleConfig::Scalene { lac: separation, shift: variable },
    };
    let state = match assemble_three(triangle, &params) {
        Ok(s) => s,
        Err(e) => {
            record.warnings.push(format!("error: {e}"));
            return record;
        }
    };
    let pairs: Vec<(Pair, &PairElements)> = Pair::ALL.iter().map(|&p| (p, state.elems(p))).collect();
    record.record_perturbativity(&pairs, true);
    if wants(Measure::Elements) {
        let slots: Vec<(usize, &PairElements)> = pairs.iter().enumerate().map(|(i, (_, e))| (i, *e)).collect();
        record.record_elements(&slots);
    }
    if wants(Measure::L1) {
        record.coherence_l1 = record.put("coherence_l1", Ok(coherence_l1_three(&state)));
    }
    if wants(Measure::Rec) {
        record.coherence_rec = record.put("coherence_rec", rec_three(&state).map(|r| r.bits));
    }
    if wants(Measure::TripartiteNegativity) {
        let value = match config {
            ConfigKind::Equilateral => tripartite_negativity(&state),
            _ => tripartite_negativity_numeric(&state),
        };
        record.tripartite_negativity = record.put("tripartite_negativity", value);
    }
    record
}

/// Evaluates every `(gap, value)` grid point, sorted by gap and then by the
/// sweep variable. Per-point failures become warnings on that row.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRecord>> {
    spec.validate()?;
    let mut gaps = spec.gaps.clone();
    gaps.sort_by(f64::total_cmp);
    let grid = spec.grid();
    let mut records = Vec::with_capacity(gaps.len() * grid.len());
    for &gap in &gaps {
        for &value in &grid {
            records.push(evaluate_point(spec.config, spec.coupling, gap, value, spec.lac, &spec.measures));
        }
    }
    Ok(records)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    Fig1,
    Fig3,
    Fig4,
    Fig5,
}

impl Figure {
    pub const ALL: [Figure; 4] = [Figure::Fig1, Figure::Fig3, Figure::Fig4, Figure::Fig5];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig3 => "fig3",
            Figure::Fig4 => "fig4",
            Figure::Fig5 => "fig5",
        }
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}

pub const PRESET_COUPLING: f64 = 0.1;
pub const PRESET_GAPS: [f64; 4] = [0.5, 1.0, 1.5, 2.0];
pub const PRESET_STEPS: usize = 400;
pub const PRESET_LAC: f64 = 7.0;

pub fn figure_preset(figure: Figure) -> SweepSpec {
    let (config, min, max, lac) = match figure {
        Figure::Fig1 => (ConfigKind::Two, 0.25, 10.0, None),
        Figure::Fig3 => (ConfigKind::Equilateral, 0.25, 10.0, None),
        Figure::Fig4 => (ConfigKind::Linear, 0.25, 10.0, None),
        Figure::Fig5 => (ConfigKind::Scalene, 0.0, 10.0, Some(PRESET_LAC)),
    };
    SweepSpec {
        config,
        coupling: PRESET_COUPLING,
        gaps: PRESET_GAPS.to_vec(),
        min,
        max,
        steps: PRESET_STEPS,
        lac,
        measures: Measure::all(),
    }
}

fn field(value: Option<f64>) -> String {
    value.map(|v| format!("{v:.16e}")).unwrap_or_default()
}

/// The CSV fields of one record, in [`CSV_HEADER`] order.
pub fn csv_fields(r: &SweepRecord) -> Vec<String> {
    let mut cols = vec![
        r.config.name().to_string(),
        field(Some(r.coupling)),
        field(Some(r.gap)),
        field(Some(r.separation).filter(|v| v.is_finite())),
        field(r.shift),
        field(r.p),
    ];
    cols.extend(r.c.iter().map(|&v| field(v)));
    cols.extend(r.abs_x.iter().map(|&v| field(v)));
    cols.push(field(r.coherence_l1));
    cols.push(field(r.coherence_rec));
    cols.push(field(r.negativity));
    cols.push(field(r.tripartite_negativity));
    // Warnings are free text: keep them inside one CSV field.
    cols.push(r.warnings.join(";").replace([',', '\n', '"'], " "));
    cols
}

pub fn emit_csv<W: Write>(records: &[SweepRecord], out: &mut W) -> Result<()> {
    if records.is_empty() {
        return Err(Error::InvalidSweep("no records to write".into()));
    }
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{}", csv_fields(r).join(","))?;
    }
    out.flush()?;
    Ok(())
}

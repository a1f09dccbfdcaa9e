//! Bound reports: reconciling lower and upper bounds per invariant.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::verify::VerifyParams;

/// The invariant a report bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Invariant {
    Tc(usize),
    TcInf,
    Cat(usize),
    CatInf,
}

impl Invariant {
    fn family(&self) -> (&'static str, Option<usize>) {
        match *self {
            Invariant::Tc(k) => ("tc", Some(k)),
            Invariant::TcInf => ("tc", None),
            Invariant::Cat(k) => ("cat", Some(k)),
            Invariant::CatInf => ("cat", None),
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family() {
            (name, Some(k)) => write!(f, "{name}^{{G,{k}}}"),
            (name, None) => write!(f, "{name}^{{G,inf}}"),
        }
    }
}

impl FromStr for Invariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("unknown invariant {s:?}; expected tc^{{G,k}}, tc^{{G,inf}}, cat^{{G,k}} or cat^{{G,inf}}");
        let (name, rest) = s.split_once("^{G,").ok_or_else(bad)?;
        let stage = rest.strip_suffix('}').ok_or_else(bad)?;
        let k = match stage {
            "inf" | "∞" => None,
            k => Some(k.parse::<usize>().map_err(|_| bad())?),
        };
        match (name, k) {
            ("tc", Some(k)) if k >= 1 => Ok(Invariant::Tc(k)),
            ("tc", None) => Ok(Invariant::TcInf),
            ("cat", Some(k)) if k >= 1 => Ok(Invariant::Cat(k)),
            ("cat", None) => Ok(Invariant::CatInf),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Invariant {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Invariant {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A bound with the operation that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub value: usize,
    pub source: String,
}

impl Bound {
    pub fn new(value: usize, source: impl Into<String>) -> Self {
        Bound {
            value,
            source: source.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Consistent,
    Contradiction,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub invariant: Invariant,
    pub scenario: String,
    pub lower: usize,
    pub lower_source: String,
    pub upper: Option<usize>,
    pub upper_source: Option<String>,
    pub params: VerifyParams,
    pub status: Status,
}

pub const TRIVIAL_LOWER: &str = "trivial";

/// Max of the lowers, min of the uppers (first source wins ties). With no
/// lower bound the trivial bound 0 is used; with no upper bound the report
/// has none.
pub fn reconcile(
    scenario: &str,
    invariant: Invariant,
    lowers: &[Bound],
    uppers: &[Bound],
    params: &VerifyParams,
) -> BoundReport {
    let lower = lowers
        .iter()
        .fold(None::<&Bound>, |best, b| match best {
            Some(x) if x.value >= b.value => Some(x),
            _ => Some(b),
        })
        .cloned()
        .unwrap_or_else(|| Bound::new(0, TRIVIAL_LOWER));
    let upper = uppers.iter().fold(None::<&Bound>, |best, b| match best {
        Some(x) if x.value <= b.value => Some(x),
        _ => Some(b),
    });
    let status = match upper {
        Some(u) if lower.value > u.value => Status::Contradiction,
        _ => Status::Consistent,
    };
    BoundReport {
        invariant,
        scenario: scenario.to_string(),
        lower: lower.value,
        lower_source: lower.source,
        upper: upper.map(|u| u.value),
        upper_source: upper.map(|u| u.source.clone()),
        params: *params,
        status,
    }
}

impl BoundReport {
    pub fn interval(&self) -> String {
        match self.upper {
            Some(u) => format!("[{}, {u}]", self.lower),
            None => format!("[{}, ?]", self.lower),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn csv_header() -> &'static [&'static str] {
        &[
            "scenario",
            "invariant",
            "lower",
            "lower_source",
            "upper",
            "upper_source",
            "status",
            "grid",
            "epsilon",
            "delta",
            "modulus",
            "samples",
            "seed",
        ]
    }

    pub fn csv_record(&self) -> Vec<String> {
        let p = &self.params;
        vec![
            self.scenario.clone(),
            self.invariant.to_string(),
            self.lower.to_string(),
            self.lower_source.clone(),
            self.upper.map(|u| u.to_string()).unwrap_or_default(),
            self.upper_source.clone().unwrap_or_default(),
            match self.status {
                Status::Consistent => "consistent".into(),
                Status::Contradiction => "contradiction".into(),
            },
            p.grid.to_string(),
            p.epsilon.to_string(),
            p.delta.to_string(),
            p.modulus.to_string(),
            p.samples.to_string(),
            p.seed.to_string(),
        ]
    }
}

/// Writes reports as CSV with a header row.
pub fn reports_to_csv(reports: &[BoundReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(BoundReport::csv_header()).expect("in-memory write");
    for r in reports {
        w.write_record(r.csv_record()).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

/// Collected bounds of one scenario, before reconciliation.
#[derive(Clone, Debug, Default)]
pub struct BoundLedger {
    entries: BTreeMap<Invariant, (Vec<Bound>, Vec<Bound>)>,
}

impl BoundLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn lower(&mut self, inv: Invariant, b: Bound) {
        self.entries.entry(inv).or_default().0.push(b);
    }

    pub fn upper(&mut self, inv: Invariant, b: Bound) {
        self.entries.entry(inv).or_default().1.push(b);
    }

    /// Registers `inv` so that [`propagate`](Self::propagate) fills it in.
    pub fn touch(&mut self, inv: Invariant) {
        self.entries.entry(inv).or_default();
    }

    pub fn invariants(&self) -> Vec<Invariant> {
        self.entries.keys().copied().collect()
    }

    /// Spreads bounds along the monotone stage sequences: an upper bound at
    /// stage k holds at every later stage and at ∞, a lower bound at stage k
    /// or at ∞ holds at every earlier stage. For a free action stage 2 equals
    /// stage ∞, so stage-2 lower bounds also hold at ∞. At ∞ the two families
    /// are linked by `cat ≤ tc ≤ 2·cat`.
    pub fn propagate(&mut self, free: bool) {
        let families: Vec<&str> = self.entries.keys().map(|i| i.family().0).collect();
        if families.contains(&"tc") {
            self.entries.entry(Invariant::TcInf).or_default();
        }
        if families.contains(&"cat") {
            self.entries.entry(Invariant::CatInf).or_default();
        }
        if free {
            for (stage, inf) in [(Invariant::Tc(2), Invariant::TcInf), (Invariant::Cat(2), Invariant::CatInf)] {
                let lows = self.entries.get(&stage).map(|e| e.0.clone()).unwrap_or_default();
                for l in lows {
                    self.lower(inf, Bound::new(l.value, format!("{} via {stage} (free action)", l.source)));
                }
            }
        }
        self.spread();
        self.chain();
        self.spread();
        for (lows, ups) in self.entries.values_mut() {
            dedup(lows);
            dedup(ups);
        }
    }

    fn spread(&mut self) {
        let snapshot = self.entries.clone();
        for (&inv, (lows, ups)) in &snapshot {
            let (fam, k) = inv.family();
            for other in snapshot.keys() {
                let (f2, k2) = other.family();
                if f2 != fam || *other == inv {
                    continue;
                }
                let later = matches!((k, k2), (Some(a), Some(b)) if b > a) || (k.is_some() && k2.is_none());
                let earlier = matches!((k, k2), (Some(a), Some(b)) if b < a) || (k.is_none() && k2.is_some());
                if later {
                    for u in ups {
                        self.upper(*other, Bound::new(u.value, format!("{} via {inv}", u.source)));
                    }
                }
                if earlier {
                    for l in lows {
                        self.lower(*other, Bound::new(l.value, format!("{} via {inv}", l.source)));
                    }
                }
            }
        }
    }

    /// `cat^{G,∞} ≤ tc^{G,∞} ≤ 2·cat^{G,∞}` when both families are present.
    fn chain(&mut self) {
        let (Some(cat), Some(_)) = (self.entries.get(&Invariant::CatInf).cloned(), self.entries.get(&Invariant::TcInf)) else {
            return;
        };
        for l in cat.0 {
            self.lower(Invariant::TcInf, Bound::new(l.value, format!("{} via cat^{{G,inf}} ≤ tc^{{G,inf}}", l.source)));
        }
        for u in cat.1 {
            self.upper(Invariant::TcInf, Bound::new(2 * u.value, format!("{} via tc^{{G,inf}} ≤ 2·cat^{{G,inf}}", u.source)));
        }
    }

    pub fn reconcile(&self, scenario: &str, params: &VerifyParams) -> Vec<BoundReport> {
        self.entries
            .iter()
            .map(|(&inv, (lows, ups))| reconcile(scenario, inv, lows, ups, params))
            .collect()
    }
}

fn dedup(v: &mut Vec<Bound>) {
    let mut seen = std::collections::BTreeSet::new();
    v.retain(|b| seen.insert((b.value, b.source.clone())));
}

/// Violations of `cat^{G,∞} ≤ tc^{G,∞} ≤ 2·cat^{G,∞}` and of
/// `cat^{G,∞} = 0 ⇔ tc^{G,∞} = 0` forced by the certified intervals.
pub fn chain_violations(reports: &[BoundReport]) -> Vec<String> {
    let mut out = Vec::new();
    let by_scenario = |inv: Invariant| -> BTreeMap<&str, &BoundReport> {
        reports.iter().filter(|r| r.invariant == inv).map(|r| (r.scenario.as_str(), r)).collect()
    };
    let cats = by_scenario(Invariant::CatInf);
    for (scenario, tc) in by_scenario(Invariant::TcInf) {
        let Some(cat) = cats.get(scenario) else { continue };
        if let Some(tu) = tc.upper {
            if cat.lower > tu {
                out.push(format!("{scenario}: cat^{{G,inf}} ≥ {} exceeds tc^{{G,inf}} ≤ {tu}", cat.lower));
            }
            if tu == 0 && cat.lower > 0 {
                out.push(format!("{scenario}: tc^{{G,inf}} = 0 but cat^{{G,inf}} ≥ {}", cat.lower));
            }
        }
        if let Some(cu) = cat.upper {
            if tc.lower > 2 * cu {
                out.push(format!("{scenario}: tc^{{G,inf}} ≥ {} exceeds 2·cat^{{G,inf}} ≤ {}", tc.lower, 2 * cu));
            }
            if cu == 0 && tc.lower > 0 {
                out.push(format!("{scenario}: cat^{{G,inf}} = 0 but tc^{{G,inf}} ≥ {}", tc.lower));
            }
        }
    }
    out
}

//! Machine-readable reports emitted by the command-line driver.

use serde::Serialize;

use crate::pipeline::{ClassHomology, HpClassReport};

#[derive(Clone, Debug, Serialize)]
pub struct ClassRecord {
    pub representative: String,
    pub side: String,
    pub even: usize,
    pub odd: usize,
    pub stabilization_level: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window_dims: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crosscheck: Option<bool>,
    pub route: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Totals {
    pub even: usize,
    pub odd: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteEntry {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub group: String,
    pub command: String,
    pub seed: Option<u64>,
    pub classes: Vec<ClassRecord>,
    pub totals: Totals,
    pub suite: Vec<SuiteEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary_dump: Option<String>,
}

impl Report {
    pub fn from_group_homology(group: &str, classes: &[ClassHomology]) -> Report {
        let records: Vec<ClassRecord> = classes
            .iter()
            .map(|c| ClassRecord {
                representative: c.representative.clone(),
                side: c.side.clone(),
                even: c.even,
                odd: c.odd,
                stabilization_level: c.stabilization_level,
                window_dims: Some(c.window_dims.clone()),
                crosscheck: c.crosscheck,
                route: format!("{:?}", c.route),
            })
            .collect();
        let totals = Totals {
            even: records.iter().map(|r| r.even).sum(),
            odd: records.iter().map(|r| r.odd).sum(),
        };
        Report {
            group: group.to_string(),
            command: "group-homology".into(),
            seed: None,
            classes: records,
            totals,
            suite: vec![],
            boundary_dump: None,
        }
    }

    pub fn from_hp(group: &str, classes: &[HpClassReport]) -> Report {
        let records: Vec<ClassRecord> = classes
            .iter()
            .map(|c| ClassRecord {
                representative: c.representative.clone(),
                side: "elliptic".into(),
                even: c.even,
                odd: c.odd,
                stabilization_level: c.stabilization_level,
                window_dims: None,
                crosscheck: None,
                route: format!("{:?}", c.route),
            })
            .collect();
        let totals = Totals {
            even: records.iter().map(|r| r.even).sum(),
            odd: records.iter().map(|r| r.odd).sum(),
        };
        Report {
            group: group.to_string(),
            command: "compute-hp".into(),
            seed: None,
            classes: records,
            totals,
            suite: vec![],
            boundary_dump: None,
        }
    }

    pub fn pretty(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("group: {}  ({})\n", self.group, self.command));
        if !self.classes.is_empty() {
            out.push_str("class        side        even  odd  level  route\n");
            for c in &self.classes {
                out.push_str(&format!(
                    "{:<12} {:<10} {:>5} {:>4} {:>6}  {}\n",
                    c.representative, c.side, c.even, c.odd, c.stabilization_level, c.route
                ));
                if let Some(w) = &c.window_dims {
                    out.push_str(&format!("             window dims {w:?}\n"));
                }
            }
            out.push_str(&format!(
                "totals: even {}  odd {}\n",
                self.totals.even, self.totals.odd
            ));
        }
        for s in &self.suite {
            out.push_str(&format!(
                "[{}] {}{}\n",
                if s.passed { "pass" } else { "FAIL" },
                s.name,
                s.witness
                    .as_ref()
                    .map(|w| format!("  witness: {w}"))
                    .unwrap_or_default()
            ));
        }
        out
    }
}

//! Revenue and welfare tables against the second-price baseline.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::MechanismError;
use crate::graph::Graph;
use crate::mechanism::{Mechanism, MechanismKind, Vickrey};
use crate::rational::{as_string, Rational};

/// Suffix on the mechanism column of rows computed on the zero-weight view.
pub const ZERO_WEIGHT_MARK: &str = "@zero-weight";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRow {
    pub instance: String,
    pub mechanism: String,
    pub winner: Option<String>,
    #[serde(with = "as_string")]
    pub revenue: Rational,
    #[serde(with = "as_string")]
    pub welfare: Rational,
    #[serde(with = "as_string")]
    pub vickrey_revenue: Rational,
    #[serde(with = "as_string")]
    pub vickrey_welfare: Rational,
}

/// One row per mechanism at the truthful profile. On a weighted graph the
/// CDM rows are computed on the zero-weight projection and marked.
pub fn bench_instance(
    instance: &str,
    graph: &Graph,
    mechanisms: &[MechanismKind],
) -> Result<Vec<BenchRow>, MechanismError> {
    let projected = graph.zero_weight_projection();
    let weighted = !graph.is_unweighted();
    let mut rows = Vec::new();
    for &kind in mechanisms {
        let (view, label) = if kind.is_cdm() && weighted {
            (&projected, format!("{kind}{ZERO_WEIGHT_MARK}"))
        } else {
            (graph, kind.to_string())
        };
        let truthful = view.truthful_profile();
        let outcome = kind.build().run_or_no_sale(view, &truthful)?;
        let baseline = Vickrey.run_or_no_sale(view, &truthful)?;
        rows.push(BenchRow {
            instance: instance.to_string(),
            mechanism: label,
            winner: outcome.winner.map(|w| view.id(w).to_string()),
            revenue: outcome.revenue,
            welfare: outcome.welfare,
            vickrey_revenue: baseline.revenue,
            vickrey_welfare: baseline.welfare,
        });
    }
    Ok(rows)
}

/// Sorts by instance (stable within an instance) and writes CSV with a header.
pub fn write_csv<W: Write>(rows: &mut [BenchRow], out: W) -> csv::Result<()> {
    rows.sort_by(|a, b| a.instance.cmp(&b.instance));
    let mut writer = csv::Writer::from_writer(out);
    for row in rows.iter() {
        writer.serialize(row)?;
    }
    if rows.is_empty() {
        writer.write_record([
            "instance",
            "mechanism",
            "winner",
            "revenue",
            "welfare",
            "vickrey_revenue",
            "vickrey_welfare",
        ])?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> csv::Result<Vec<BenchRow>> {
    csv::Reader::from_reader(input).deserialize().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fig1;
    use crate::rational::int;

    #[test]
    fn fig1_rows() {
        let rows = bench_instance("fig1", &fig1(), &MechanismKind::ALL).unwrap();
        let by_name = |m: &str| rows.iter().find(|r| r.mechanism == m).unwrap();
        assert_eq!(by_name("vickrey").revenue, int(1));
        assert_eq!(by_name("cdm-beta@zero-weight").revenue, int(3));
        assert_eq!(by_name("cdm-idm@zero-weight").revenue, int(1));
        assert_eq!(by_name("wdm").revenue, int(7));
        assert!(rows.iter().all(|r| r.vickrey_revenue == int(1)));
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let mut rows = bench_instance("fig1", &fig1(), &MechanismKind::ALL).unwrap();
        rows[0].revenue = Rational::new(-7, 3);
        rows[1].winner = None;
        let mut buf = Vec::new();
        write_csv(&mut rows, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("instance,mechanism,winner,revenue,welfare,vickrey_revenue,vickrey_welfare\n"));
        assert!(text.contains("-7/3"));
        assert_eq!(read_csv(buf.as_slice()).unwrap(), rows);
    }

    #[test]
    fn empty_table_still_has_header() {
        let mut buf = Vec::new();
        write_csv(&mut [], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "instance,mechanism,winner,revenue,welfare,vickrey_revenue,vickrey_welfare\n"
        );
    }
}

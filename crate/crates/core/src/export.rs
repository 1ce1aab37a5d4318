//! CSV export of frame fields and ingest of sampled positions.

use std::io::{Read, Write};

use crate::curve::SampledCurve;
use crate::error::{Error, Result};
use crate::frames::{FrameField, FrameKind};
use crate::numerics::SampleGrid;
use crate::vector::EuclideanVector;

fn vector_names(kind: FrameKind, dim: usize) -> Vec<String> {
    let mut names = vec!["T".to_string()];
    match kind {
        FrameKind::Frenet if dim == 3 => names.extend(["N".into(), "B".into()]),
        FrameKind::Frenet => names.extend(["N".into(), "B1".into(), "B2".into()]),
        FrameKind::ParallelTransport => names.extend((1..dim).map(|i| format!("M{i}"))),
    }
    names
}

/// Header row: `s, x1..xd`, frame vector components, then curvatures
/// (`kappa1..` for Frenet, `k1..` for parallel transport).
pub fn frame_columns(kind: FrameKind, dim: usize) -> Vec<String> {
    let mut cols = vec!["s".to_string()];
    cols.extend((1..=dim).map(|j| format!("x{j}")));
    for (v, name) in vector_names(kind, dim).iter().enumerate() {
        cols.extend((1..=dim).map(|j| {
            if v == 0 {
                format!("{name}{j}")
            } else {
                format!("{name}_{j}")
            }
        }));
    }
    let prefix = match kind {
        FrameKind::Frenet => "kappa",
        FrameKind::ParallelTransport => "k",
    };
    cols.extend((1..dim).map(|i| format!("{prefix}{i}")));
    cols
}

/// Writes one row per node. `s` is the curve's original parameter.
pub fn write_frames_csv<W: Write>(out: W, curve: &SampledCurve, frame: &FrameField) -> Result<()> {
    if frame.len() != curve.len() {
        return Err(Error::InvalidGrid(format!(
            "frame has {} nodes, curve has {}",
            frame.len(),
            curve.len()
        )));
    }
    let dim = curve.dimension();
    let mut w = csv::Writer::from_writer(out);
    w.write_record(frame_columns(frame.kind, dim))?;
    for i in 0..curve.len() {
        let mut row = vec![curve.parameter[i]];
        row.extend_from_slice(curve.positions[i].as_slice());
        for field in &frame.vectors {
            row.extend_from_slice(field[i].as_slice());
        }
        row.extend(frame.curvatures.iter().map(|k| k[i]));
        w.write_record(row.iter().map(|x| x.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a curve from CSV with columns `s, x1..xd` (other columns ignored).
/// The `s` column must be uniformly spaced.
pub fn read_positions_csv<R: Read>(input: R, name: &str) -> Result<SampledCurve> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers()?.clone();
    let find = |col: &str| headers.iter().position(|h| h.trim() == col);
    let s_col = find("s").ok_or_else(|| Error::InvalidSpec("CSV has no `s` column".into()))?;
    let x_cols: Vec<usize> = (1..).map_while(|j| find(&format!("x{j}"))).collect();
    if !(3..=4).contains(&x_cols.len()) {
        return Err(Error::InvalidSpec(format!(
            "CSV needs columns x1..x3 or x1..x4, found {}",
            x_cols.len()
        )));
    }
    let mut s = Vec::new();
    let mut positions = Vec::new();
    for (line, record) in r.records().enumerate() {
        let record = record?;
        let field = |c: usize| -> Result<f64> {
            record
                .get(c)
                .and_then(|v| v.trim().parse().ok())
                .ok_or_else(|| Error::InvalidSpec(format!("row {}: bad number in column {}", line + 2, c + 1)))
        };
        s.push(field(s_col)?);
        positions.push(EuclideanVector::from_slice(
            &x_cols.iter().map(|&c| field(c)).collect::<Result<Vec<_>>>()?,
        ));
    }
    let grid = SampleGrid::from_values(&s)?;
    SampledCurve::from_samples(name, grid, positions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;
    use crate::curve::realize_curve;
    use crate::frames::{compute_frenet, compute_pt_frame};
    use crate::numerics::ToleranceConfig;

    #[test]
    fn column_layout() {
        let cols = frame_columns(FrameKind::ParallelTransport, 3);
        assert_eq!(
            cols.join(","),
            "s,x1,x2,x3,T1,T2,T3,M1_1,M1_2,M1_3,M2_1,M2_2,M2_3,k1,k2"
        );
        let cols = frame_columns(FrameKind::Frenet, 4);
        assert_eq!(cols.len(), 1 + 4 + 16 + 3);
        assert_eq!(cols.last().unwrap(), "kappa3");
        assert!(cols.contains(&"B2_4".to_string()));
    }

    #[test]
    fn export_then_ingest_keeps_positions() {
        let tol = ToleranceConfig::default();
        let spec = builtin("helix3d").unwrap().with_samples(201).unwrap();
        let curve = realize_curve(&spec, &tol).unwrap();
        let frame = compute_pt_frame(&curve, &compute_frenet(&curve).unwrap()).unwrap();
        let mut buf = Vec::new();
        write_frames_csv(&mut buf, &curve, &frame).unwrap();
        let back = read_positions_csv(buf.as_slice(), "copy").unwrap();
        assert_eq!(back.len(), curve.len());
        for (a, b) in back.positions.iter().zip(&curve.positions) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn ingest_rejects_missing_columns() {
        let text = "s,x1,x2\n0,0,0\n";
        assert!(read_positions_csv(text.as_bytes(), "bad").is_err());
    }
}

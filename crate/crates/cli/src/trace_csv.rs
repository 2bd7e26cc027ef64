//! Trace export as CSV, one row per trace record.

use std::io::Write;

use lcpath_core::TraceRecord;

/// Names of the state blocks, e.g. `["x", "z1", "z2"]`.
pub fn header(blocks: &[&str], n: usize) -> Vec<String> {
    let mut h: Vec<String> =
        ["outer_index", "event", "lambda", "step_a", "residual", "det_sign"].iter().map(|s| s.to_string()).collect();
    for b in blocks {
        h.extend((1..=n).map(|i| format!("{b}_{i}")));
    }
    h
}

/// Writes the header and every record. Floats use the shortest decimal that
/// round-trips.
pub fn write<W: Write>(out: W, blocks: &[&str], n: usize, trace: &[TraceRecord]) -> Result<(), csv::Error> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(header(blocks, n))?;
    for r in trace {
        let mut row = vec![
            r.outer_index.to_string(),
            r.event.name().to_string(),
            r.lambda.to_string(),
            r.step_a.to_string(),
            r.residual.to_string(),
            r.det_sign.symbol().to_string(),
        ];
        row.extend(r.y.iter().map(|v| v.to_string()));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

//! CSV tables with fixed headers.

use std::io::Write;

use crate::error::Result;

use super::{ConvergenceRow, SweepRow};

pub const CONVERGENCE_HEADER: &str = "h,tau,err_p_L2,err_u_L2,order_p,avg_iters,max_iters";
pub const SWEEP_HEADER: &str = "L,avg_iters,converged";

/// Writes the header and one line per row; the order of the first row is
/// left empty.
pub fn write_convergence_csv<W: Write>(out: &mut W, rows: &[ConvergenceRow]) -> Result<()> {
    writeln!(out, "{CONVERGENCE_HEADER}")?;
    for r in rows {
        let order = r.order_p.map(|o| format!("{o:.6}")).unwrap_or_default();
        writeln!(
            out,
            "{},{},{:.10e},{:.10e},{},{:.4},{}",
            r.h, r.tau, r.err_p, r.err_u, order, r.avg_iterations, r.max_iterations
        )?;
    }
    Ok(())
}

/// Writes the header and one line per row; failed runs get an empty
/// iteration count.
pub fn write_sweep_csv<W: Write>(out: &mut W, rows: &[SweepRow]) -> Result<()> {
    writeln!(out, "{SWEEP_HEADER}")?;
    for r in rows {
        let avg = r.avg_iterations.map(|a| format!("{a:.4}")).unwrap_or_default();
        writeln!(out, "{},{},{}", r.stabilization, avg, r.converged)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn headers_and_rows() {
        let rows = vec![
            ConvergenceRow {
                h: 0.25,
                tau: 0.1,
                err_p: 4e-3,
                err_u: 1e-3,
                order_p: None,
                avg_iterations: 7.5,
                max_iterations: 9,
            },
            ConvergenceRow {
                h: 0.125,
                tau: 0.1,
                err_p: 1e-3,
                err_u: 2e-4,
                order_p: Some(2.0),
                avg_iterations: 7.0,
                max_iterations: 8,
            },
        ];
        let mut buf = Vec::new();
        write_convergence_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CONVERGENCE_HEADER);
        assert_eq!(lines[1], "0.25,0.1,4.0000000000e-3,1.0000000000e-3,,7.5000,9");
        assert_eq!(lines[2], "0.125,0.1,1.0000000000e-3,2.0000000000e-4,2.000000,7.0000,8");

        let sweep = vec![
            SweepRow {
                stabilization: 0.05,
                avg_iterations: Some(6.0),
                converged: true,
            },
            SweepRow {
                stabilization: 0.0125,
                avg_iterations: None,
                converged: false,
            },
        ];
        let mut buf = Vec::new();
        write_sweep_csv(&mut buf, &sweep).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "L,avg_iters,converged\n0.05,6.0000,true\n0.0125,,false\n"
        );
    }
}

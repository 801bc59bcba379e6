//! Output formats. Every float is written with 17 significant digits and
//! JSON object keys are sorted, so identical inputs give identical bytes.

use std::io::{self, Write};

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::coherent::MeanTrajectory;
use crate::duru_map::PhasePoint;
use crate::error::Result;
use crate::oracle::{GridSpec, MatchReport};
use crate::spectrum::EnergyLevel;

/// Formatter writing every `f64` as `{:.16e}`.
struct SeventeenDigits;

impl serde_json::ser::Formatter for SeventeenDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt_f64(value).as_bytes())
    }
}

/// Negative zero is written as `0`.
pub fn fmt_f64(value: f64) -> String {
    format!("{:.16e}", value + 0.0)
}

/// `[re, im]`, even when the imaginary part is zero.
pub fn complex_pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// Serialize through `serde_json::Value` (sorted keys) with 17-digit floats
/// and a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let tree = serde_json::to_value(value)?;
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SeventeenDigits);
    tree.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

pub fn spectrum_json(levels: &[EnergyLevel]) -> Value {
    Value::Array(
        levels
            .iter()
            .map(|l| {
                json!({
                    "n": l.n,
                    "E": complex_pair(l.energy),
                    "s": complex_pair(l.s_exponent),
                    "real": l.is_real,
                })
            })
            .collect(),
    )
}

pub fn grid_json(spec: &GridSpec) -> Value {
    json!({
        "x_min": spec.grid.x_min,
        "x_max": spec.grid.x_max,
        "n_points": spec.grid.n_points,
        "stencil": spec.stencil.order(),
    })
}

pub fn match_report_json(case: &str, spec: Option<&GridSpec>, report: &MatchReport) -> Value {
    let matches: Vec<Value> = report
        .matches
        .iter()
        .map(|m| {
            json!({
                "n": m.n,
                "analytic": complex_pair(m.analytic),
                "numeric": m.numeric.map(complex_pair),
                "delta": m.delta,
                "pass": m.pass,
            })
        })
        .collect();
    json!({
        "case": case,
        "grid": spec.map(grid_json),
        "matches": matches,
        "pass": report.pass,
    })
}

fn write_rows<W: Write>(out: &mut W, header: &str, rows: impl Iterator<Item = Vec<f64>>) -> Result<()> {
    writeln!(out, "{header}")?;
    for row in rows {
        let cells: Vec<String> = row.into_iter().map(fmt_f64).collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}

/// `x,re_psi,im_psi`
pub fn write_wavefunction_csv<W: Write>(out: &mut W, samples: &[(f64, Complex64)]) -> Result<()> {
    write_rows(
        out,
        "x,re_psi,im_psi",
        samples.iter().map(|(x, psi)| vec![*x, psi.re, psi.im]),
    )
}

/// `s,t,x,px,u,v,pu,pv`
pub fn write_trajectory_csv<W: Write>(out: &mut W, points: &[PhasePoint]) -> Result<()> {
    write_rows(
        out,
        "s,t,x,px,u,v,pu,pv",
        points.iter().map(|p| vec![p.s, p.t, p.x, p.px, p.u, p.v, p.pu, p.pv]),
    )
}

/// `s,t,x_mean,re_au,im_au,re_av,im_av`
pub fn write_coherent_csv<W: Write>(out: &mut W, traj: &MeanTrajectory) -> Result<()> {
    write_rows(
        out,
        "s,t,x_mean,re_au,im_au,re_av,im_av",
        traj.samples
            .iter()
            .map(|m| vec![m.s, m.t, m.x_mean, m.a_u.re, m.a_u.im, m.a_v.re, m.a_v.im]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_is_sorted_and_17_digit() {
        let level = EnergyLevel {
            n: 0,
            energy: Complex64::new(-0.25, 0.0),
            s_exponent: Complex64::new(0.5, 0.0),
            is_real: true,
        };
        let text = to_json_string(&spectrum_json(&[level])).unwrap();
        assert_eq!(
            text,
            "[{\"E\":[-2.5000000000000000e-1,0.0000000000000000e0],\"n\":0,\"real\":true,\
             \"s\":[5.0000000000000000e-1,0.0000000000000000e0]}]\n"
        );
        // still valid JSON that round-trips the values
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back[0]["E"][0].as_f64(), Some(-0.25));
    }

    #[test]
    fn csv_headers() {
        let mut buf = Vec::new();
        write_wavefunction_csv(&mut buf, &[(0.0, Complex64::new(1.0, -2.0))]).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "x,re_psi,im_psi\n0.0000000000000000e0,1.0000000000000000e0,-2.0000000000000000e0\n"
        );
        let mut buf = Vec::new();
        write_trajectory_csv(&mut buf, &[PhasePoint::default()]).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("s,t,x,px,u,v,pu,pv\n"));
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.718281828459045e-300, 6.02214076e23] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
    }
}

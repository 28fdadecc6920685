//! Report rendering.
//!
//! CSV columns per command:
//!
//! | command              | columns                                                        |
//! |----------------------|----------------------------------------------------------------|
//! | stats                | `quantity,order,exact,approx`                                  |
//! | pmf, oracle          | `k,exact,approx`                                               |
//! | bound, significance  | `kind,method,threshold,exact,approx,valid,note`                |
//! | simulate             | `trials,seed,mean,variance,standard_error,min,max,expected_exact,expected_approx` |
//! | crosscheck           | `quantity,t,mode,index,formula_exact,oracle_exact,equal`       |

use std::fmt::Write as _;

use crate::job::Format;
use crate::report::*;
use crate::run::CliError;

pub fn render(report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(report).map_err(|e| CliError::Io(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => csv_text(report).map_err(|e| CliError::Io(e.to_string())),
        Format::Plain => Ok(plain(report)),
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn csv_text(report: &Report) -> Result<String, Box<dyn std::error::Error>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    match report {
        Report::Stats(r) => {
            w.write_record(["quantity", "order", "exact", "approx"])?;
            for (name, v) in [("mean", &r.mean), ("variance", &r.variance), ("second_moment", &r.second_moment)] {
                w.write_record([name, "", &v.exact, &v.approx])?;
            }
            for (name, list) in [("raw_moment", &r.raw_moments), ("central_moment", &r.central_moments)] {
                for m in list {
                    w.write_record([name, &m.order.to_string(), &m.value.exact, &m.value.approx])?;
                }
            }
        }
        Report::Pmf(r) | Report::Oracle(r) => {
            w.write_record(["k", "exact", "approx"])?;
            for row in &r.rows {
                w.write_record([&row.k.to_string(), &row.p.exact, &row.p.approx])?;
            }
        }
        Report::Bound(r) => {
            w.write_record(["kind", "method", "threshold", "exact", "approx", "valid", "note"])?;
            w.write_record(["mean", "", "", &r.mean.exact, &r.mean.approx, "", ""])?;
            w.write_record(["variance", "", "", &r.variance.exact, &r.variance.approx, "", ""])?;
            for b in &r.bounds {
                bound_row(&mut w, b)?;
            }
            for th in &r.thresholds {
                w.write_record([
                    "max_mean",
                    &th.method,
                    "",
                    "",
                    &float_text(th.max_mean),
                    "",
                    if th.mean_within { "mean within" } else { "mean above" },
                ])?;
            }
        }
        Report::Significance(r) => {
            w.write_record(["kind", "method", "threshold", "exact", "approx", "valid", "note"])?;
            w.write_record(["mean", "", "", &r.mean.exact, &r.mean.approx, "", ""])?;
            w.write_record(["variance", "", "", &r.variance.exact, &r.variance.approx, "", ""])?;
            bound_row(&mut w, &r.result)?;
        }
        Report::Simulate(r) => {
            w.write_record([
                "trials", "seed", "mean", "variance", "standard_error", "min", "max", "expected_exact", "expected_approx",
            ])?;
            w.write_record([
                r.trials.to_string(),
                r.seed.to_string(),
                r.mean.to_string(),
                r.variance.to_string(),
                r.standard_error.to_string(),
                r.min.to_string(),
                r.max.to_string(),
                r.expected_mean.exact.clone(),
                r.expected_mean.approx.clone(),
            ])?;
        }
        Report::Crosscheck(r) => {
            w.write_record(["quantity", "t", "mode", "index", "formula_exact", "oracle_exact", "equal"])?;
            for c in &r.checks {
                w.write_record([
                    c.quantity.clone(),
                    opt(&c.t),
                    opt(&c.mode),
                    opt(&c.index),
                    c.formula.exact.clone(),
                    c.oracle.exact.clone(),
                    c.equal.to_string(),
                ])?;
            }
        }
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn bound_row(w: &mut csv::Writer<Vec<u8>>, b: &BoundOut) -> csv::Result<()> {
    w.write_record([
        "bound".to_string(),
        b.method.clone(),
        b.threshold.to_string(),
        opt(&b.bound.exact),
        b.bound.approx.clone(),
        b.valid.to_string(),
        opt(&b.reason),
    ])
}

fn header(out: &mut String, command: &str, inst: &InstanceOut, t: usize, mode: &str) {
    let m: Vec<String> = inst.m.iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "{command}: n = {}, M = [{}], t = {t}, mode = {mode}", inst.n, m.join(", "));
}

fn plain(report: &Report) -> String {
    let mut out = String::new();
    let exact = |v: &Exact| format!("{} (~{})", v.exact, v.approx);
    match report {
        Report::Stats(r) => {
            header(&mut out, "stats", &r.instance, r.t, &r.mode);
            let _ = writeln!(out, "  variable       {}", r.variable);
            let _ = writeln!(out, "  mean           {}", exact(&r.mean));
            let _ = writeln!(out, "  variance       {}", exact(&r.variance));
            let _ = writeln!(out, "  second moment  {}", exact(&r.second_moment));
            for m in &r.raw_moments {
                let _ = writeln!(out, "  E(x^{})         {}", m.order, exact(&m.value));
            }
            for m in &r.central_moments {
                let _ = writeln!(out, "  E((x-mu)^{})    {}", m.order, exact(&m.value));
            }
        }
        Report::Pmf(r) | Report::Oracle(r) => {
            header(&mut out, "pmf", &r.instance, r.t, &r.mode);
            let _ = writeln!(out, "  variable {}, method {}, {} configurations", r.variable, r.method, r.total_configurations);
            for row in &r.rows {
                let _ = writeln!(out, "  k = {:<4} {}", row.k, exact(&row.p));
            }
            let _ = writeln!(out, "  mean {}, variance {}", exact(&r.mean), exact(&r.variance));
        }
        Report::Bound(r) => {
            header(&mut out, "bound", &r.instance, r.t, &r.mode);
            let _ = writeln!(out, "  mean {}, variance {}", exact(&r.mean), exact(&r.variance));
            for b in &r.bounds {
                plain_bound(&mut out, b);
            }
            for th in &r.thresholds {
                let _ = writeln!(
                    out,
                    "  {} max mean at alpha {}: {} ({})",
                    th.method,
                    r.alpha,
                    float_text(th.max_mean),
                    if th.mean_within { "mean within" } else { "mean above" }
                );
            }
        }
        Report::Significance(r) => {
            header(&mut out, "significance", &r.instance, r.t, &r.mode);
            let _ = writeln!(out, "  observed k {}, mean {}, variance {}", r.observed_k, exact(&r.mean), exact(&r.variance));
            plain_bound(&mut out, &r.result);
        }
        Report::Simulate(r) => {
            header(&mut out, "simulate", &r.instance, r.t, &r.mode);
            let _ = writeln!(out, "  trials {}, seed {}", r.trials, r.seed);
            let _ = writeln!(out, "  sample mean {} (se {}), variance {}", r.mean, r.standard_error, r.variance);
            let _ = writeln!(out, "  range {}..={}, expected mean {}", r.min, r.max, exact(&r.expected_mean));
        }
        Report::Crosscheck(r) => {
            let m: Vec<String> = r.instance.m.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "crosscheck: n = {}, M = [{}], {} configurations", r.instance.n, m.join(", "), r.total_configurations);
            for c in &r.checks {
                let _ = writeln!(
                    out,
                    "  {:<5} {:<20} t={:<3} {:<11} {:<4} formula {} oracle {}",
                    if c.equal { "ok" } else { "DIFF" },
                    c.quantity,
                    opt(&c.t),
                    opt(&c.mode),
                    opt(&c.index),
                    c.formula.exact,
                    c.oracle.exact
                );
            }
            let _ = writeln!(out, "  verdict: {}", if r.verdict { "all equal" } else { "MISMATCH" });
        }
    }
    out
}

fn plain_bound(out: &mut String, b: &BoundOut) {
    let (rel, value) = match &b.bound.exact {
        Some(e) => ("=", format!("{e} (~{})", b.bound.approx)),
        None => ("<=", format!("~{}", b.bound.approx)),
    };
    let _ = write!(out, "  {} P(x >= {}) {rel} {}", b.method, b.threshold, value);
    if !b.valid {
        let _ = write!(out, " [invalid]");
    }
    if let Some(reason) = &b.reason {
        let _ = write!(out, " ({reason})");
    }
    out.push('\n');
}

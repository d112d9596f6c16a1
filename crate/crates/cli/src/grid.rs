//! Grid flags: comma lists (`-1,0,1`) or `start:stop:count` ranges.
//!
//! A range with `0 < start < stop` is log-spaced (the `t` sweeps span many
//! decades); any other range is linear.

use crate::error::{usage, CliError};

pub fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(usage("empty grid"));
    }
    if spec.contains(':') {
        return parse_range(spec);
    }
    spec.split(',').map(|s| parse_finite(s.trim())).collect()
}

fn parse_finite(s: &str) -> Result<f64, CliError> {
    let v: f64 = s
        .parse()
        .map_err(|_| usage(format!("not a number: {s:?}")))?;
    if !v.is_finite() {
        return Err(usage(format!("grid values must be finite, got {s:?}")));
    }
    Ok(v)
}

fn parse_range(spec: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, stop, count] = parts[..] else {
        return Err(usage(format!(
            "range must be start:stop:count, got {spec:?}"
        )));
    };
    let start = parse_finite(start.trim())?;
    let stop = parse_finite(stop.trim())?;
    let count: usize = count
        .trim()
        .parse()
        .map_err(|_| usage(format!("bad range count in {spec:?}")))?;
    if count == 0 {
        return Err(usage("range count must be at least 1"));
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let last = (count - 1) as f64;
    let grid = if start > 0.0 && stop > start {
        let (la, lb) = (start.log10(), stop.log10());
        (0..count)
            .map(|i| match i {
                0 => start,
                i if i == count - 1 => stop,
                i => 10f64.powf(la + (lb - la) * i as f64 / last),
            })
            .collect()
    } else {
        (0..count)
            .map(|i| match i {
                i if i == count - 1 => stop,
                i => start + (stop - start) * i as f64 / last,
            })
            .collect()
    };
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        assert_eq!(parse_grid("-1,0,1").unwrap(), [-1.0, 0.0, 1.0]);
        assert_eq!(parse_grid(" 1e8 ").unwrap(), [1e8]);
        assert!(parse_grid("1,x").is_err());
        assert!(parse_grid("").is_err());
        assert!(parse_grid("inf").is_err());
    }

    #[test]
    fn log_ranges_hit_decades() {
        let g = parse_grid("1e2:1e8:4").unwrap();
        assert_eq!(g[0], 1e2);
        assert!((g[1] - 1e4).abs() < 1e-8);
        assert!((g[2] - 1e6).abs() < 1e-6);
        assert_eq!(g[3], 1e8);
    }

    #[test]
    fn linear_ranges() {
        assert_eq!(parse_grid("-2:2:5").unwrap(), [-2.0, -1.0, 0.0, 1.0, 2.0]);
        assert_eq!(parse_grid("3:1:3").unwrap(), [3.0, 2.0, 1.0]);
        assert_eq!(parse_grid("5:9:1").unwrap(), [5.0]);
        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("1:2:0").is_err());
    }
}

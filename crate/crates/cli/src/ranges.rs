//! Parameter lists for `sweep`: `4,8,16`, `10..20` (inclusive) and
//! `2^10..2^16` (powers of two, inclusive), freely mixed.

pub fn parse_ints(s: &str) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim) {
        if item.is_empty() {
            continue;
        }
        match item.split_once("..") {
            None => out.push(int(item)?),
            Some((a, b)) => match (a.strip_prefix("2^"), b.strip_prefix("2^")) {
                (Some(a), Some(b)) => {
                    let (a, b) = (int(a)?, int(b)?);
                    if b > 63 {
                        return Err(format!("exponent {b} is too large"));
                    }
                    out.extend((a..=b).map(|e| 1u64 << e));
                }
                (None, None) => out.extend(int(a)?..=int(b)?),
                _ => return Err(format!("mixed range `{item}`")),
            },
        }
    }
    if out.is_empty() {
        return Err(format!("`{s}` is an empty range"));
    }
    Ok(out)
}

pub fn parse_floats(s: &str) -> Result<Vec<f64>, String> {
    let out = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|_| format!("bad number `{t}`")))
        .collect::<Result<Vec<_>, _>>()?;
    if out.is_empty() {
        return Err(format!("`{s}` is an empty list"));
    }
    Ok(out)
}

fn int(s: &str) -> Result<u64, String> {
    s.trim().parse().map_err(|_| format!("bad integer `{s}`"))
}

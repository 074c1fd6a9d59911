use transversals::{FamilyKind, Vertex};

use crate::error::CliError;

/// Parses a comma-separated vertex list. Matching instances also accept
/// `x3` / `y3` for vertices `3` and `n + 3` of a `2n`-vertex instance.
pub fn parse_set(spec: &str, kind: FamilyKind, num_vertices: usize) -> Result<Vec<Vertex>, CliError> {
    let half = num_vertices / 2;
    let mut out = Vec::new();
    for token in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let bad = || CliError::Input(format!("bad set element {token:?}"));
        let v = match (kind, token.as_bytes()[0]) {
            (FamilyKind::Matching, b'x' | b'X') => {
                let i: usize = token[1..].parse().map_err(|_| bad())?;
                if i >= half {
                    return Err(bad());
                }
                i
            }
            (FamilyKind::Matching, b'y' | b'Y') => {
                let i: usize = token[1..].parse().map_err(|_| bad())?;
                if i >= half {
                    return Err(bad());
                }
                half + i
            }
            _ => token.parse().map_err(|_| bad())?,
        };
        if v >= num_vertices {
            return Err(CliError::Input(format!("set element {v} out of range for {num_vertices} vertices")));
        }
        if out.contains(&v) {
            return Err(CliError::Input(format!("set element {v} repeated")));
        }
        out.push(v);
    }
    out.sort_unstable();
    Ok(out)
}

//! Text format for integer-set morphisms.
//!
//! ```text
//! dom:{x:1,u:0}
//! cod:{y:1,v:0}
//! map:[0]
//! mode:"FB"
//! ```
//!
//! `map` lists, for each element of `X` and then of `V`, its image in
//! `Y` followed by `U`. Writing a parsed file reproduces it byte for byte
//! when it was written by [`to_text`].

use infsum_core::intsets::{Injection, IntMorphism, IntObject, IntSetError, Mode};

#[derive(Debug, thiserror::Error)]
pub enum MorphismFileError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing field {0:?}")]
    Missing(&'static str),
    #[error(transparent)]
    Invalid(#[from] IntSetError),
}

fn syntax<T>(line: usize, msg: impl Into<String>) -> Result<T, MorphismFileError> {
    Err(MorphismFileError::Syntax { line, msg: msg.into() })
}

pub fn to_text(f: &IntMorphism) -> String {
    let (dom, cod) = (f.dom(), f.cod());
    let map: Vec<String> = f.map().table().iter().map(usize::to_string).collect();
    format!(
        "dom:{{x:{},u:{}}}\ncod:{{y:{},v:{}}}\nmap:[{}]\nmode:\"{}\"\n",
        dom.pos,
        dom.neg,
        cod.pos,
        cod.neg,
        map.join(","),
        f.mode().name()
    )
}

/// `{a:n,b:m}` with the two given keys, in order.
fn object(line: usize, s: &str, keys: [&str; 2]) -> Result<IntObject, MorphismFileError> {
    let Some(inner) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) else {
        return syntax(line, "expected {..}");
    };
    let mut sizes = [0usize; 2];
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return syntax(line, format!("expected {}:n,{}:n", keys[0], keys[1]));
    }
    for (i, part) in parts.iter().enumerate() {
        match part.split_once(':') {
            Some((k, v)) if k.trim() == keys[i] => {
                sizes[i] = v.trim().parse().or_else(|_| syntax(line, format!("bad size {v:?}")))?;
            }
            _ => return syntax(line, format!("expected {}:n", keys[i])),
        }
    }
    Ok(IntObject::new(sizes[0], sizes[1]))
}

fn table(line: usize, s: &str) -> Result<Vec<usize>, MorphismFileError> {
    let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) else {
        return syntax(line, "expected [..]");
    };
    inner
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().or_else(|_| syntax(line, format!("bad index {p:?}"))))
        .collect()
}

/// Reads a morphism; `mode`, when given, replaces the file's own.
pub fn parse(text: &str, mode: Option<Mode>) -> Result<IntMorphism, MorphismFileError> {
    let (mut dom, mut cod, mut map, mut file_mode) = (None, None, None, None);
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() {
            continue;
        }
        let Some((key, val)) = l.split_once(':') else {
            return syntax(line, "expected key:value");
        };
        let val = val.trim();
        let seen = match key.trim() {
            "dom" => dom.replace(object(line, val, ["x", "u"])?).is_some(),
            "cod" => cod.replace(object(line, val, ["y", "v"])?).is_some(),
            "map" => map.replace(table(line, val)?).is_some(),
            "mode" => {
                let name = val.trim_matches('"');
                let m = name.parse::<Mode>().or_else(|_| syntax(line, format!("unknown mode {val}")))?;
                file_mode.replace(m).is_some()
            }
            other => return syntax(line, format!("unknown field {other:?}")),
        };
        if seen {
            return syntax(line, format!("repeated field {:?}", key.trim()));
        }
    }
    let dom = dom.ok_or(MorphismFileError::Missing("dom"))?;
    let cod = cod.ok_or(MorphismFileError::Missing("cod"))?;
    let map = map.ok_or(MorphismFileError::Missing("map"))?;
    let mode = mode.or(file_mode).ok_or(MorphismFileError::Missing("mode"))?;
    let map = Injection::new(cod.pos + dom.neg, map)?;
    Ok(IntMorphism::new(dom, cod, map, mode)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "dom:{x:1,u:0}\ncod:{y:3,v:2}\nmap:[0,1,2]\nmode:\"FB\"\n";
        let f = parse(text, None).unwrap();
        assert_eq!(to_text(&f), text);
        assert_eq!(f.cod(), IntObject::new(3, 2));
    }

    #[test]
    fn rejects() {
        assert!(matches!(parse("dom:{x:1,u:0}\ncod:{y:1,v:0}\nmode:\"FB\"", None), Err(MorphismFileError::Missing("map"))));
        let dup = "dom:{x:2,u:0}\ncod:{y:2,v:0}\nmap:[0,0]\nmode:\"FI\"";
        assert!(matches!(parse(dup, None), Err(MorphismFileError::Invalid(_))));
        let inj = "dom:{x:1,u:0}\ncod:{y:2,v:0}\nmap:[1]\nmode:\"FI\"";
        assert!(parse(inj, None).is_ok());
        assert!(parse(inj, Some(Mode::FB)).is_err());
        assert!(matches!(parse("dom:{u:1,x:0}", None), Err(MorphismFileError::Syntax { line: 1, .. })));
    }
}

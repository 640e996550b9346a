//! Oracles shared by the integration tests. Nothing here calls into the
//! Fox-calculus code it is used to check.

#![allow(dead_code)]

/// Dense integer polynomial in `t`, lowest degree first.
pub type Dense = Vec<i64>;

fn trim(mut p: Dense) -> Dense {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn add(a: &Dense, b: &Dense) -> Dense {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

fn mul(a: &Dense, b: &Dense) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Determinant by cofactor expansion along the first row.
fn det(m: &[Vec<Dense>]) -> Dense {
    let n = m.len();
    if n == 0 {
        return vec![1];
    }
    let mut acc = Vec::new();
    for j in 0..n {
        let minor: Vec<Vec<Dense>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let mut term = mul(&m[0][j], &det(&minor));
        if j % 2 == 1 {
            term = term.iter().map(|x| -x).collect();
        }
        acc = add(&acc, &term);
    }
    acc
}

/// `det(V - t V^T)` with leading and trailing zeros removed and the lowest
/// coefficient made positive.
pub fn seifert_alexander(v: &[Vec<i64>]) -> Dense {
    let n = v.len();
    let m: Vec<Vec<Dense>> = (0..n)
        .map(|i| (0..n).map(|j| trim(vec![v[i][j], -v[j][i]])).collect())
        .collect();
    let mut d = det(&m);
    let lead = d.iter().position(|&x| x != 0).unwrap_or(0);
    d.drain(..lead);
    if d.first().is_some_and(|&x| x < 0) {
        d.iter_mut().for_each(|x| *x = -*x);
    }
    d
}

/// Renders a dense polynomial the way the library prints polynomials:
/// descending degree, `c*t^k`, signs as separators.
pub fn render(d: &Dense) -> String {
    let mut out = String::new();
    for (k, &c) in d.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mag = c.abs();
        let body = match (k, mag) {
            (0, m) => m.to_string(),
            (1, 1) => "t".to_string(),
            (1, m) => format!("{m}*t"),
            (k, 1) => format!("t^{k}"),
            (k, m) => format!("{m}*t^{k}"),
        };
        if out.is_empty() {
            out = if c < 0 { format!("-{body}") } else { body };
        } else {
            out += if c < 0 { " - " } else { " + " };
            out += &body;
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// All `key -> text` pairs of a JSON document, with nested keys dotted and
/// arrays kept as lists of strings.
pub fn flatten(v: &serde_json::Value) -> Vec<(String, Vec<String>)> {
    fn go(prefix: &str, v: &serde_json::Value, out: &mut Vec<(String, Vec<String>)>) {
        match v {
            serde_json::Value::Object(m) => {
                for (k, x) in m {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    go(&key, x, out);
                }
            }
            serde_json::Value::Array(items) => out.push((
                prefix.to_string(),
                items
                    .iter()
                    .map(|i| i.as_str().unwrap_or_default().to_string())
                    .collect(),
            )),
            serde_json::Value::Bool(b) => out.push((
                prefix.to_string(),
                vec![if *b { "yes" } else { "no" }.into()],
            )),
            serde_json::Value::String(s) => out.push((prefix.to_string(), vec![s.clone()])),
            other => out.push((prefix.to_string(), vec![other.to_string()])),
        }
    }
    let mut out = Vec::new();
    go("", v, &mut out);
    out
}

/// Parses `key: value` text (with indented list items) into the same shape
/// as [`flatten`].
pub fn parse_text(text: &str) -> Vec<(String, Vec<String>)> {
    let mut out: Vec<(String, Vec<String>)> = Vec::new();
    for line in text.lines() {
        if let Some(item) = line.strip_prefix("  ") {
            out.last_mut()
                .expect("list item after a key")
                .1
                .push(item.to_string());
        } else if let Some((k, v)) = line.split_once(": ") {
            out.push((k.to_string(), vec![v.to_string()]));
        } else if let Some(k) = line.strip_suffix(':') {
            out.push((k.to_string(), Vec::new()));
        }
    }
    out
}

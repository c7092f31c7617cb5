use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{FinPoset, LatticeError};

fn quote(label: &str) -> String {
    let mut s = String::with_capacity(label.len() + 2);
    s.push('"');
    for ch in label.chars() {
        if ch == '"' || ch == '\\' {
            s.push('\\');
        }
        s.push(ch);
    }
    s.push('"');
    s
}

/// Reads the quoted identifiers on one DOT line.
fn quoted_ids(line: &str) -> Result<Vec<String>, String> {
    let mut ids = Vec::new();
    let mut chars = line.chars();
    while let Some(ch) = chars.next() {
        if ch != '"' {
            continue;
        }
        let mut id = String::new();
        loop {
            match chars.next() {
                Some('\\') => id.push(chars.next().ok_or("dangling escape")?),
                Some('"') => break,
                Some(c) => id.push(c),
                None => return Err("unterminated string".into()),
            }
        }
        ids.push(id);
    }
    Ok(ids)
}

impl FinPoset {
    /// Cover pairs `(a, b)`, `a ⋖ b`, as indices sorted by `(a, b)`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.size() {
            for b in self.up[a].iter() {
                if b == a {
                    continue;
                }
                // nothing strictly between a and b
                let between = self.up[a].and(&self.down[b]);
                if between.count() == 2 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Cover pairs by label.
    pub fn hasse(&self) -> Vec<(String, String)> {
        self.covers()
            .into_iter()
            .map(|(a, b)| (self.labels[a].clone(), self.labels[b].clone()))
            .collect()
    }

    /// Length of the longest chain from a minimal element up to each element.
    pub fn heights(&self) -> Vec<usize> {
        let n = self.size();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| self.down[i].count());
        let mut h = vec![0; n];
        for &b in &order {
            h[b] = self.down[b]
                .iter()
                .filter(|&a| a != b)
                .map(|a| h[a] + 1)
                .max()
                .unwrap_or(0);
        }
        h
    }

    /// Hasse diagram in DOT. Nodes and edges are sorted by label, edges point
    /// upward, and elements of equal height share a rank.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
        let mut nodes: Vec<&str> = self.labels.iter().map(String::as_str).collect();
        nodes.sort_unstable();
        for l in &nodes {
            let _ = writeln!(out, "  {};", quote(l));
        }
        let mut edges = self.hasse();
        edges.sort();
        for (a, b) in &edges {
            let _ = writeln!(out, "  {} -> {};", quote(a), quote(b));
        }
        let mut ranks: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
        for (i, h) in self.heights().into_iter().enumerate() {
            ranks.entry(h).or_default().push(&self.labels[i]);
        }
        for (_, mut members) in ranks {
            members.sort_unstable();
            let list: Vec<String> = members.iter().map(|l| quote(l)).collect();
            let _ = writeln!(out, "  {{ rank=same; {}; }}", list.join("; "));
        }
        out.push_str("}\n");
        out
    }

    /// Reads back the output of [`FinPoset::to_dot`]: node lines give the
    /// elements, edge lines the covers. Rank hints are ignored.
    pub fn from_dot(text: &str) -> Result<FinPoset, LatticeError> {
        let mut labels = Vec::new();
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('{') || !line.contains('"') {
                continue;
            }
            let err = |message: String| LatticeError::Dot { line: i + 1, message };
            let ids = quoted_ids(line).map_err(err)?;
            match (line.contains("->"), ids.as_slice()) {
                (true, [a, b]) => edges.push((a.clone(), b.clone())),
                (false, [a]) => labels.push(a.clone()),
                _ => return Err(err(format!("unrecognised statement `{line}`"))),
            }
        }
        FinPoset::from_relation(labels, &edges)
    }
}

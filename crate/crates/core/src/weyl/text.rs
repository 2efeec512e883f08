//! Text format for elements of `W_ext`.
//!
//! An element `w = t_mu * v` is written `t[mu_1,...,mu_n]*s_i*s_j*...` where
//! `s_i s_j ...` is the shortlex-least reduced word of `v in W_f` (1-based).
//! The parser additionally accepts any product of the tokens `e`, `t[...]`,
//! `s1..sk`, `s0a`, `s0b`, ... (and `s0` when there is a single component).

use super::{GeneratorKind, WeylElt, WeylGroup};
use crate::rootdata::Weight;
use crate::{Error, Result};

pub fn format_elt(group: &WeylGroup, w: &WeylElt) -> String {
    let mu = group.finite().apply(w.fin, &w.trans);
    let mut s = String::from("t[");
    for (k, x) in mu.iter().enumerate() {
        if k > 0 {
            s.push(',');
        }
        s.push_str(&x.to_string());
    }
    s.push(']');
    for &i in group.finite().word(w.fin) {
        s.push_str("*s");
        s.push_str(&(i as usize + 1).to_string());
    }
    s
}

pub fn parse_elt(group: &WeylGroup, text: &str) -> Result<WeylElt> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty element".into()));
    }
    let mut acc = group.identity();
    for token in text.split('*').map(str::trim) {
        let factor = parse_token(group, token)?;
        acc = group.multiply(&acc, &factor);
    }
    Ok(acc)
}

fn parse_token(group: &WeylGroup, token: &str) -> Result<WeylElt> {
    if token == "e" {
        return Ok(group.identity());
    }
    if let Some(body) = token.strip_prefix("t[").and_then(|b| b.strip_suffix(']')) {
        let coords: Vec<i64> = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad coordinate `{x}` in `{token}`")))
                })
                .collect::<Result<_>>()?
        };
        if coords.len() != group.rank() {
            return Err(Error::Parse(format!(
                "translation `{token}` has {} coordinates, expected {}",
                coords.len(),
                group.rank()
            )));
        }
        return Ok(group.translation(&Weight(coords)));
    }
    let gens = group.coxeter_generators();
    if let Some(g) = gens.iter().find(|g| g.name == token) {
        return Ok(g.elt.clone());
    }
    if token == "s0" {
        let affine: Vec<_> = gens
            .iter()
            .filter(|g| matches!(g.kind, GeneratorKind::Affine(_)))
            .collect();
        if affine.len() == 1 {
            return Ok(affine[0].elt.clone());
        }
    }
    Err(Error::Parse(format!("unknown generator `{token}`")))
}

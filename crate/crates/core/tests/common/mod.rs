//! Shared fixtures for the integration suites.
#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigInt;
use polyring::presentation::{GenId, Monomial, Polynomial};
use polyring::{Tableau, Weights};

/// Every weight vector of positive integers with total at most `max_total`.
pub fn weight_vectors(max_total: u32) -> Vec<Weights> {
    fn rec(left: u32, cur: &mut Vec<u32>, out: &mut Vec<Weights>) {
        if !cur.is_empty() {
            out.push(Weights::new(cur.clone()).unwrap());
        }
        for x in 1..=left {
            cur.push(x);
            rec(left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(max_total, &mut Vec::new(), &mut out);
    out
}

pub fn tableau_from_columns(n: usize, cols: &[(u16, u16)]) -> Tableau {
    let mut top: Vec<u16> = cols.iter().map(|c| c.0).collect();
    let mut bottom: Vec<u16> = cols.iter().map(|c| c.1).collect();
    top.sort_unstable();
    bottom.sort_unstable();
    Tableau::new(n, top, bottom).unwrap()
}

pub const PENTAGON_GENERATORS: [(char, &str); 6] = [
    ('A', "[1 1 2 2 3 / 3 4 4 5 5]"),
    ('B', "[1 1 2 2 4 / 3 3 4 5 5]"),
    ('C', "[1 1 2 3 3 / 2 4 4 5 5]"),
    ('D', "[1 1 2 3 4 / 2 3 4 5 5]"),
    ('E', "[1 1 2 4 4 / 2 3 3 5 5]"),
    ('F', "[1 1 3 3 4 / 2 2 4 5 5]"),
];

pub const PENTAGON_RELATIONS: [&str; 5] =
    ["BC = AD", "AE = BD - DD + DE", "AF = CD - DD + DF", "BF = DD - DE", "CE = DD - DF"];

pub const OCTAGON_GENERATORS: [(char, [(u16, u16); 4]); 14] = [
    ('A', [(1, 5), (2, 6), (3, 7), (4, 8)]),
    ('B', [(1, 4), (2, 6), (3, 7), (5, 8)]),
    ('C', [(1, 4), (2, 5), (3, 7), (6, 8)]),
    ('D', [(1, 4), (2, 5), (3, 6), (7, 8)]),
    ('E', [(1, 3), (2, 6), (4, 7), (5, 8)]),
    ('F', [(1, 3), (2, 5), (4, 7), (6, 8)]),
    ('G', [(1, 3), (2, 5), (4, 6), (7, 8)]),
    ('H', [(1, 3), (2, 4), (5, 7), (6, 8)]),
    ('I', [(1, 3), (2, 4), (5, 6), (7, 8)]),
    ('J', [(1, 2), (3, 6), (4, 7), (5, 8)]),
    ('K', [(1, 2), (3, 5), (4, 7), (6, 8)]),
    ('L', [(1, 2), (3, 5), (4, 6), (7, 8)]),
    ('M', [(1, 2), (3, 4), (5, 7), (6, 8)]),
    ('N', [(1, 2), (3, 4), (5, 6), (7, 8)]),
];

/// Each entry is `0 = ...`.
pub const OCTAGON_RELATIONS: [&str; 14] = [
    "-AH + AI + AM - AN + BF - BG - BK + BL",
    "-BF + CE",
    "+CL - CN - DK + DM",
    "-FL + GK",
    "+CG - CI - DF + DH + FI - FN - GH + GM",
    "-BG + CG - CI + DE - DF + DI + FI - FN - GI + GN",
    "-AH + BF - DF + DH + FI - FJ + FL + FM - 2FN - GH + HJ - HK + HN",
    "+EL - EN - GJ + IJ",
    "+EK - EM - FJ + FM - FN + HJ - HK + IK",
    "-AH + BF - DF + DH + FI - FJ + FL + FM - 2FN - GH + HJ - HK + IM",
    "-AI + DE - DF + DI + EK - EL - EM + EN + FI - FJ + FL + FM - 2FN - GI + HJ - HK + IN",
    "-BK + CJ + EK - EM - FJ + FM - FN + JM - KM + KN",
    "-AM + CG - CI + CJ - CL + CN - DF + DH + FI - FJ + FL + FM - FN - GH + JM - KM + MN",
    "-AN - BG - BK + CG - CI + CJ + DE - DF + DI + DJ - DK + DN + EK - EM + FI - FJ + FL + FM - 2FN - GI - GJ + JM + JN - KM + NN",
];

/// Row of the octagon table whose printed form does not vanish, and the term
/// that must be added to make it an identity.
pub const OCTAGON_MISPRINT: (usize, &str) = (13, "-FN");

/// Parses a signed sum such as `-2FN + AB`, one letter per generator.
pub fn parse_sum(s: &str, ids: &HashMap<char, GenId>) -> Polynomial {
    let mut out = Polynomial::new();
    let mut sign = 1i64;
    for token in s.split_whitespace() {
        match token {
            "+" => sign = 1,
            "-" => sign = -1,
            _ => {
                let (neg, body) = match token.strip_prefix('-') {
                    Some(rest) => (true, rest),
                    None => (false, token.trim_start_matches('+')),
                };
                let digits: String = body.chars().take_while(|c| c.is_ascii_digit()).collect();
                let coeff: i64 = if digits.is_empty() { 1 } else { digits.parse().unwrap() };
                let mono = body[digits.len()..].chars().map(|c| ids[&c]).collect();
                let s = if neg { -sign } else { sign };
                out.add_term(Monomial::new(mono), BigInt::from(s * coeff));
                sign = 1;
            }
        }
    }
    out
}

/// `lhs = rhs` as the polynomial `lhs - rhs`.
pub fn parse_relation(s: &str, ids: &HashMap<char, GenId>) -> Polynomial {
    let (lhs, rhs) = s.split_once('=').unwrap();
    parse_sum(lhs, ids).sub(&parse_sum(rhs, ids))
}

//! Dirichlet characters built from the structure of `(Z/qZ)^*`.
//!
//! Characters mod `q` are indexed by a mixed-radix integer over the cyclic
//! components of the unit group: one component per odd prime power (generated
//! by a primitive root), and for the 2-part either nothing (`2`), `-1` (`4`),
//! or `-1` followed by `5` (`2^e`, `e >= 3`). Component `i` contributes digit
//! `k_i` and the character sends its generator to `e(k_i / ord_i)`. Index 0 is
//! the principal character; `dirichlet:4:1` is the nontrivial character mod 4.

use num_complex::Complex64;

use crate::arith::{factor, gcd, pow_mod};
use crate::error::{PntError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCharacter {
    modulus: u64,
    index: u64,
    /// Group exponent; values are `e(exps[n] / exponent)`.
    exponent: u64,
    exps: Vec<Option<u64>>,
}

struct Component {
    modulus: u64,
    order: u64,
    /// discrete log of each residue mod `modulus` (None for non-units)
    log: Vec<Option<u64>>,
}

impl DirichletCharacter {
    pub fn new(modulus: u64, index: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(PntError::invariant("character modulus must be positive"));
        }
        if modulus > 10_000_000 {
            return Err(PntError::invariant(format!(
                "character modulus {modulus} too large for a value table"
            )));
        }
        let comps = components(modulus);
        let group_order: u64 = comps.iter().map(|c| c.order).product();
        if index >= group_order.max(1) {
            return Err(PntError::invariant(format!(
                "character index {index} out of range: there are {group_order} characters mod {modulus}"
            )));
        }
        let exponent = comps.iter().fold(1u64, |acc, c| lcm(acc, c.order));
        let mut digits = Vec::with_capacity(comps.len());
        let mut rest = index;
        for c in &comps {
            digits.push(rest % c.order);
            rest /= c.order;
        }
        let exps = (0..modulus)
            .map(|n| {
                if gcd(n, modulus) != 1 {
                    return None;
                }
                let mut e = 0u64;
                for (c, k) in comps.iter().zip(&digits) {
                    let a = c.log[(n % c.modulus) as usize].expect("unit has a discrete log");
                    e = (e + (k * a % c.order) * (exponent / c.order)) % exponent;
                }
                Some(e)
            })
            .collect();
        Ok(Self {
            modulus,
            index,
            exponent,
            exps,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn value(&self, n: u64) -> Complex64 {
        match self.exps[(n % self.modulus) as usize] {
            None => Complex64::new(0.0, 0.0),
            Some(e) => root_of_unity(e, self.exponent),
        }
    }

    /// True when every value is real (`+-1` or 0).
    pub fn is_real(&self) -> bool {
        self.exps
            .iter()
            .flatten()
            .all(|&e| (2 * e) % self.exponent == 0)
    }

    pub fn is_odd(&self) -> bool {
        self.modulus > 2 && self.exps[(self.modulus - 1) as usize] != Some(0)
    }

    /// Smallest `d | q` such that the character is trivial on units `= 1 mod d`.
    pub fn conductor(&self) -> u64 {
        let q = self.modulus;
        let mut divisors: Vec<u64> = (1..=q).filter(|d| q.is_multiple_of(*d)).collect();
        divisors.sort_unstable();
        for d in divisors {
            let trivial = (1..q.max(2))
                .filter(|&n| n % d == 1 % d && gcd(n, q) == 1)
                .all(|n| self.exps[(n % q) as usize] == Some(0));
            if trivial {
                return d;
            }
        }
        q
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }
}

/// `e(num / den)`, exact at quarter turns.
pub fn root_of_unity(num: u64, den: u64) -> Complex64 {
    let g = gcd(num, den).max(1);
    let (num, den) = ((num / g) % (den / g), den / g);
    if 4 % den == 0 {
        return match num * (4 / den) {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, std::f64::consts::TAU * num as f64 / den as f64)
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn components(modulus: u64) -> Vec<Component> {
    let mut out = Vec::new();
    for (p, e) in factor(modulus) {
        let pe = p.pow(e);
        if p == 2 {
            match e {
                1 => {}
                2 => out.push(cyclic(4, 3, 2)),
                _ => {
                    // n = (-1)^s 5^a; the -1 component reads s, the 5 component reads a
                    let ord5 = pe / 4;
                    let five = cyclic(pe, 5, ord5);
                    let mut sign_log = vec![None; pe as usize];
                    let mut five_log = vec![None; pe as usize];
                    for n in (1..pe).step_by(2) {
                        let s = if n % 4 == 1 { 0 } else { 1 };
                        let m = if s == 0 { n } else { pe - n };
                        sign_log[n as usize] = Some(s);
                        five_log[n as usize] = five.log[m as usize];
                    }
                    out.push(Component {
                        modulus: pe,
                        order: 2,
                        log: sign_log,
                    });
                    out.push(Component {
                        modulus: pe,
                        order: ord5,
                        log: five_log,
                    });
                }
            }
        } else {
            let g = primitive_root_prime_power(p, e);
            out.push(cyclic(pe, g, pe / p * (p - 1)));
        }
    }
    out
}

fn cyclic(modulus: u64, generator: u64, order: u64) -> Component {
    let mut log = vec![None; modulus as usize];
    let mut x = 1 % modulus;
    for a in 0..order {
        log[x as usize] = Some(a);
        x = x * generator % modulus;
    }
    Component {
        modulus,
        order,
        log,
    }
}

fn primitive_root_prime_power(p: u64, e: u32) -> u64 {
    let phi = p - 1;
    let fac = factor(phi);
    let mut g = 2;
    while !fac.iter().all(|&(r, _)| pow_mod(g, phi / r, p) != 1) {
        g += 1;
    }
    if e >= 2 && pow_mod(g, p - 1, p * p) == 1 {
        g += p;
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn odd_character_mod_4() {
        let chi = DirichletCharacter::new(4, 1).unwrap();
        assert_eq!(chi.value(1), Complex64::new(1.0, 0.0));
        assert_eq!(chi.value(3), Complex64::new(-1.0, 0.0));
        assert_eq!(chi.value(2), Complex64::new(0.0, 0.0));
        assert!(chi.is_odd() && chi.is_real() && chi.is_primitive());
        assert_eq!(chi.conductor(), 4);
    }

    #[test]
    fn principal_character() {
        let chi = DirichletCharacter::new(15, 0).unwrap();
        assert!(!chi.is_primitive());
        assert_eq!(chi.conductor(), 1);
        assert_eq!(chi.value(7), Complex64::new(1.0, 0.0));
        assert_eq!(chi.value(5), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn characters_are_multiplicative_and_orthogonal() {
        for q in [5u64, 8, 9, 12, 16, 21, 32] {
            let count = (1..q).filter(|&n| gcd(n, q) == 1).count() as u64;
            let mut nonprincipal = 0;
            for idx in 0..count {
                let chi = DirichletCharacter::new(q, idx).unwrap();
                for a in 1..q {
                    for b in 1..q {
                        assert!(close(chi.value(a * b), chi.value(a) * chi.value(b)));
                    }
                }
                let total: Complex64 = (0..q).map(|n| chi.value(n)).sum();
                if idx == 0 {
                    assert!(close(total, Complex64::new(count as f64, 0.0)));
                } else {
                    nonprincipal += 1;
                    assert!(total.norm() < 1e-9, "q={q} idx={idx}");
                }
            }
            assert_eq!(nonprincipal, count - 1);
            assert!(DirichletCharacter::new(q, count).is_err());
        }
    }

    #[test]
    fn primitive_counts() {
        // number of primitive characters mod q
        let expected = [(5u64, 3usize), (8, 2), (9, 4), (12, 1), (16, 4)];
        for (q, n) in expected {
            let total = (1..q).filter(|&k| gcd(k, q) == 1).count() as u64;
            let prim = (0..total)
                .filter(|&i| DirichletCharacter::new(q, i).unwrap().is_primitive())
                .count();
            assert_eq!(prim, n, "q={q}");
        }
    }

    #[test]
    fn quarter_turns_exact() {
        assert_eq!(root_of_unity(2, 8), Complex64::new(0.0, 1.0));
        assert_eq!(root_of_unity(3, 4), Complex64::new(0.0, -1.0));
        assert_eq!(root_of_unity(5, 10), Complex64::new(-1.0, 0.0));
    }
}

// Test-side oracles. Nothing here calls into the library's automata, graphs
// or power iteration.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use blockglue::{Alphabet, SubshiftSpec, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub const EXTENSION: usize = 10;

/// Every binary SFT of order at most 3, as a forbidden subset of {0,1}^3.
pub struct CorpusEntry {
    pub mask: u8,
    pub forbidden: Vec<Vec<u8>>,
    pub spec: SubshiftSpec,
}

pub fn corpus() -> Vec<CorpusEntry> {
    (0..=255u8)
        .map(|mask| {
            let forbidden: Vec<Vec<u8>> = (0..8u8)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| bits(b, 3))
                .collect();
            let spec = SubshiftSpec::sft(
                Alphabet::binary(),
                forbidden.iter().map(|w| Word::new(w.clone())),
            )
            .unwrap();
            CorpusEntry {
                mask,
                forbidden,
                spec,
            }
        })
        .collect()
}

pub fn bits(x: u8, len: usize) -> Vec<u8> {
    (0..len).map(|i| x >> (len - 1 - i) & 1).collect()
}

pub fn all_binary(n: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..1u64 << n).map(move |x| (0..n).map(|i| (x >> (n - 1 - i) & 1) as u8).collect())
}

/// Brute-force language of an SFT whose forbidden words all have length 3:
/// words avoiding F that extend by EXTENSION letters on both sides.
pub struct BruteLanguage {
    forbidden: BTreeSet<Vec<u8>>,
    right: HashMap<(Vec<u8>, usize), bool>,
    left: HashMap<(Vec<u8>, usize), bool>,
}

impl BruteLanguage {
    pub fn new(forbidden: &[Vec<u8>]) -> Self {
        assert!(forbidden.iter().all(|w| w.len() == 3));
        BruteLanguage {
            forbidden: forbidden.iter().cloned().collect(),
            right: HashMap::new(),
            left: HashMap::new(),
        }
    }

    pub fn avoids(&self, w: &[u8]) -> bool {
        w.windows(3).all(|f| !self.forbidden.contains(f))
    }

    fn extends_right(&mut self, tail: Vec<u8>, depth: usize) -> bool {
        if depth == 0 {
            return true;
        }
        if let Some(&r) = self.right.get(&(tail.clone(), depth)) {
            return r;
        }
        let ok = (0..2u8).any(|a| {
            let probe = [tail[0], tail[1], a];
            !self.forbidden.contains(&probe[..]) && self.extends_right(vec![tail[1], a], depth - 1)
        });
        self.right.insert((tail, depth), ok);
        ok
    }

    fn extends_left(&mut self, head: Vec<u8>, depth: usize) -> bool {
        if depth == 0 {
            return true;
        }
        if let Some(&r) = self.left.get(&(head.clone(), depth)) {
            return r;
        }
        let ok = (0..2u8).any(|a| {
            let probe = [a, head[0], head[1]];
            !self.forbidden.contains(&probe[..]) && self.extends_left(vec![a, head[0]], depth - 1)
        });
        self.left.insert((head, depth), ok);
        ok
    }

    pub fn contains(&mut self, w: &[u8]) -> bool {
        if w.is_empty() {
            return all_binary(2).any(|x| self.contains(&x));
        }
        if w.len() < 2 {
            // factorial closure: a short word is in L iff some length-2 word contains it
            return all_binary(2).any(|x| x.windows(w.len()).any(|f| f == w) && self.contains(&x));
        }
        self.avoids(w)
            && self.extends_right(w[w.len() - 2..].to_vec(), EXTENSION)
            && self.extends_left(w[..2].to_vec(), EXTENSION)
    }

    pub fn words(&mut self, n: usize) -> BTreeSet<Vec<u8>> {
        all_binary(n).filter(|w| self.contains(w)).collect()
    }

    /// Gluing of all pairs of length-3 words at every gap in `c..=c+2`.
    pub fn glues(&mut self, c: usize) -> bool {
        let l3 = self.words(3);
        for gap in c..=c + 2 {
            for u in &l3 {
                for v in &l3 {
                    let found = all_binary(gap).any(|w| {
                        let mut x = u.clone();
                        x.extend(w);
                        x.extend(v);
                        self.contains(&x)
                    });
                    if !found {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn min_gluing(&mut self, c_max: usize) -> Option<usize> {
        (0..=c_max).find(|&c| self.glues(c))
    }
}

pub fn bytes(words: &[Word]) -> BTreeSet<Vec<u8>> {
    words.iter().map(|w| w.symbols().to_vec()).collect()
}

// Exact Perron root: characteristic polynomial over the integers, then
// Sturm bisection on its square-free part with rational arithmetic.

type Poly = Vec<BigRational>;

pub fn char_poly(rows: &[Vec<u32>]) -> Vec<i128> {
    let n = rows.len();
    let a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    // Faddeev–LeVerrier; coefficients from x^n down to x^0.
    let mut coeffs = vec![1i128];
    let mut m = vec![vec![0i128; n]; n];
    for k in 1..=n {
        let prev = *coeffs.last().unwrap();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += prev;
        }
        let am: Vec<Vec<i128>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|l| a[i][l] * m[l][j]).sum())
                    .collect()
            })
            .collect();
        let trace: i128 = (0..n).map(|i| am[i][i]).sum();
        assert_eq!(trace % k as i128, 0);
        coeffs.push(-trace / k as i128);
        m = am;
    }
    coeffs
}

fn rat(x: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
    }
    p
}

fn eval(p: &Poly, x: &BigRational) -> BigRational {
    p.iter().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn derivative(p: &Poly) -> Poly {
    let d = p.len() - 1;
    trim(
        p[..d]
            .iter()
            .enumerate()
            .map(|(i, c)| c * rat((d - i) as i128))
            .collect(),
    )
}

fn rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    while !r.is_empty() && r.len() >= b.len() {
        let f = &r[0] / &b[0];
        for (i, bc) in b.iter().enumerate() {
            r[i] = &r[i] - &f * bc;
        }
        r.remove(0);
        while r.len() > 1 && r[0].is_zero() {
            r.remove(0);
        }
    }
    if r.is_empty() {
        vec![BigRational::zero()]
    } else {
        r
    }
}

fn div(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let mut q = Vec::new();
    while r.len() >= b.len() {
        let f = &r[0] / &b[0];
        for (i, bc) in b.iter().enumerate() {
            r[i] = &r[i] - &f * bc;
        }
        q.push(f);
        r.remove(0);
    }
    trim(q)
}

fn is_zero(p: &Poly) -> bool {
    p.iter().all(Zero::is_zero)
}

fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !is_zero(&b) {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn sturm(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone(), derivative(p)];
    loop {
        let k = seq.len();
        if seq[k - 1].len() == 1 {
            break;
        }
        let r = rem(&seq[k - 2], &seq[k - 1]);
        if is_zero(&r) {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    seq
}

fn sign_changes(seq: &[Poly], x: &BigRational) -> usize {
    let signs: Vec<i32> = seq
        .iter()
        .map(|p| eval(p, x))
        .filter(|v| !v.is_zero())
        .map(|v| if v.is_positive() { 1 } else { -1 })
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Interval `[lo, hi]` of width below 2^-60 holding the largest real root of
/// the characteristic polynomial, which is the Perron root.
pub fn perron_root(rows: &[Vec<u32>]) -> (f64, f64) {
    let p: Poly = char_poly(rows).into_iter().map(rat).collect();
    if rows.is_empty() {
        return (0.0, 0.0);
    }
    let g = gcd(&p, &derivative(&p));
    let q = if g.len() > 1 { div(&p, &g) } else { p };
    let seq = sturm(&q);
    let bound: u64 = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as u64).sum::<u64>())
        .max()
        .unwrap_or(0)
        + 1;
    // the Perron root is a real root in [0, bound); find x with exactly one root above.
    let mut lo = rat(-1);
    let mut hi = rat(bound as i128);
    let above = |x: &BigRational| sign_changes(&seq, x) - sign_changes(&seq, &rat(bound as i128));
    assert!(above(&lo) >= 1);
    let eps = BigRational::new(BigInt::one(), BigInt::one() << 60u32);
    while &hi - &lo > eps {
        let mid = (&lo + &hi) / rat(2);
        if above(&mid) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (to_f64_down(&lo), to_f64_up(&hi))
}

fn to_f64_down(x: &BigRational) -> f64 {
    let f = approx(x);
    if rat_of(f) > *x {
        f.next_down()
    } else {
        f
    }
}

fn to_f64_up(x: &BigRational) -> f64 {
    let f = approx(x);
    if rat_of(f) < *x {
        f.next_up()
    } else {
        f
    }
}

fn approx(x: &BigRational) -> f64 {
    let scale: BigInt = BigInt::one() << 80u32;
    let scaled = (x * BigRational::from_integer(scale.clone()))
        .floor()
        .to_integer();
    scaled.to_string().parse::<f64>().unwrap() / 2f64.powi(80)
}

fn rat_of(f: f64) -> BigRational {
    BigRational::from_float(f).unwrap()
}

//! Dense univariate polynomials over a prime field `F_m`, coefficients stored
//! low degree first. Only what field construction and factoring of the
//! cyclotomic polynomial need.

pub type Poly = Vec<u32>;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, e)` with `q = p^e`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while q % p != 0 {
        p += 1;
    }
    let mut e = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    if r == 1 && is_prime(p) {
        Some((p as u32, e))
    } else {
        None
    }
}

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn inv_mod(a: u32, m: u32) -> u32 {
    // m prime
    pow_mod(a, m - 2, m)
}

pub fn pow_mod(mut a: u32, mut e: u32, m: u32) -> u32 {
    let mut r = 1u64 % m as u64;
    let mut b = a as u64 % m as u64;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m as u64;
        }
        b = b * b % m as u64;
        e >>= 1;
    }
    a = r as u32;
    a
}

pub fn add(a: &[u32], b: &[u32], m: u32) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % m)
        .collect();
    trim(out)
}

pub fn sub(a: &[u32], b: &[u32], m: u32) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + m - b.get(i).copied().unwrap_or(0) % m) % m)
        .collect();
    trim(out)
}

pub fn mul(a: &[u32], b: &[u32], m: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % m as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// Quotient and remainder of `a` by nonzero `b`.
pub fn divrem(a: &[u32], b: &[u32], m: u32) -> (Poly, Poly) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = inv_mod(b[db], m) as u64;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let mut quot = vec![0u32; a.len().saturating_sub(db).max(1)];
    let mut i = r.len();
    while i > db {
        i -= 1;
        let c = r[i] % m as u64;
        if c == 0 {
            continue;
        }
        let f = c * lead_inv % m as u64;
        quot[i - db] = f as u32;
        for (j, &bj) in b.iter().enumerate().take(db + 1) {
            let k = i - db + j;
            r[k] = (r[k] + (m as u64 - f) * bj as u64) % m as u64;
        }
    }
    let rem = trim(r.into_iter().map(|c| (c % m as u64) as u32).collect());
    (trim(quot), rem)
}

pub fn rem(a: &[u32], b: &[u32], m: u32) -> Poly {
    divrem(a, b, m).1
}

/// Extended gcd: returns `(g, s, t)` with `s a + t b = g`, `g` monic.
pub fn ext_gcd(a: &[u32], b: &[u32], m: u32) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u32], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u32]);
    while !r1.is_empty() {
        let (qt, r) = divrem(&r0, &r1, m);
        let s2 = sub(&s0, &mul(&qt, &s1, m), m);
        let t2 = sub(&t0, &mul(&qt, &t1, m), m);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if let Some(d) = degree(&r0) {
        let inv = inv_mod(r0[d], m);
        let scale = |p: &Poly| mul(p, &[inv], m);
        (scale(&r0), scale(&s0), scale(&t0))
    } else {
        (r0, s0, t0)
    }
}

/// The monic polynomial of degree `d` whose lower coefficients are the base-`m`
/// digits of `index` (constant term least significant).
pub fn monic_from_index(index: u64, d: usize, m: u32) -> Poly {
    let mut out = Vec::with_capacity(d + 1);
    let mut k = index;
    for _ in 0..d {
        out.push((k % m as u64) as u32);
        k /= m as u64;
    }
    out.push(1);
    out
}

pub fn is_irreducible(f: &[u32], m: u32) -> bool {
    let d = match degree(f) {
        Some(d) => d,
        None => return false,
    };
    if d == 0 {
        return false;
    }
    for k in 1..=d / 2 {
        let count = (m as u64).pow(k as u32);
        for idx in 0..count {
            let g = monic_from_index(idx, k, m);
            if rem(f, &g, m).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible polynomial of degree `d` over `F_m`, in the
/// order of `monic_from_index`.
pub fn smallest_irreducible(d: usize, m: u32) -> Poly {
    let count = (m as u64).pow(d as u32);
    (0..count)
        .map(|i| monic_from_index(i, d, m))
        .find(|f| is_irreducible(f, m))
        .expect("irreducible polynomials exist in every degree")
}

/// The cyclotomic polynomial `1 + x + ... + x^{p-1}` reduced mod `m`.
pub fn cyclotomic(p: u32, m: u32) -> Poly {
    vec![1 % m; p as usize]
}

/// Monic irreducible factors of degree `d` of `f`, in index order. Intended
/// for the case where `f` splits into factors of equal degree `d`.
pub fn equal_degree_factors(f: &[u32], d: usize, m: u32) -> Vec<Poly> {
    let count = (m as u64).pow(d as u32);
    (0..count)
        .map(|i| monic_from_index(i, d, m))
        .filter(|g| is_irreducible(g, m) && rem(f, g, m).is_empty())
        .collect()
}

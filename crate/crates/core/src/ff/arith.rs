//! Word-size modular arithmetic and polynomial helpers over `F_p` used before
//! a [`FieldCtx`](super::FieldCtx) exists.

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Inverse of a unit modulo `m` by the extended Euclidean algorithm.
pub fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (t0, t1) = (t1, t0 - qt * t1);
    }
    debug_assert_eq!(r0, 1, "{a} is not a unit mod {m}");
    t0.rem_euclid(m as i128) as u64
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization as sorted `(prime, exponent)` pairs.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    fn split(n: u64, out: &mut Vec<u64>) {
        if n == 1 {
            return;
        }
        if is_prime(n) {
            out.push(n);
            return;
        }
        for sp in [2u64, 3, 5, 7, 11, 13] {
            if n.is_multiple_of(sp) {
                out.push(sp);
                split(n / sp, out);
                return;
            }
        }
        let d = pollard_rho(n);
        split(d, out);
        split(n / d, out);
    }
    let mut primes = Vec::new();
    split(n, &mut primes);
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for l in primes {
        match out.last_mut() {
            Some((q, e)) if *q == l => *e += 1,
            _ => out.push((l, 1)),
        }
    }
    out
}

/// Multiplicative order of `a` modulo `n` (`gcd(a, n) = 1`).
pub fn multiplicative_order(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let phi = factorize(n).iter().fold(1u64, |acc, &(l, e)| acc * (l - 1) * l.pow(e - 1));
    let mut ord = phi;
    for (l, _) in factorize(phi) {
        while ord % l == 0 && pow_mod(a, ord / l, n) == 1 {
            ord /= l;
        }
    }
    ord
}

// --- dense polynomials over F_p as coefficient vectors, low degree first ---

fn trim(f: &mut Vec<u64>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let d = r.len() - 1;
        let c = mul_mod(r[d], lead_inv, p);
        for i in 0..=dm {
            let t = mul_mod(c, m[i], p);
            r[d - dm + i] = (r[d - dm + i] + p - t) % p;
        }
        trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    poly_rem(&prod, m, p)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or irreducibility test: `gcd(f, X^(p^i) - X) = 1` for `1 <= i <= deg/2`.
pub fn fp_poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = poly_rem(&[0, 1], f, p);
    let mut h = x.clone();
    for _ in 1..=n / 2 {
        // h <- h^p mod f
        let mut acc = vec![1u64];
        let mut base = h.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod(&acc, &base, f, p);
            }
            base = poly_mulmod(&base, &base, f, p);
            e >>= 1;
        }
        h = acc;
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        let g = poly_gcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3215031751));
        assert!(is_prime(18446744073709551557));
    }

    #[test]
    fn factorization_and_order() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(600851475143), vec![(71, 1), (839, 1), (1471, 1), (6857, 1)]);
        assert_eq!(multiplicative_order(7, 5), 4);
        assert_eq!(multiplicative_order(11, 9), 6);
        assert_eq!(multiplicative_order(13, 11), 10);
    }

    #[test]
    fn inverse() {
        assert_eq!(inv_mod(3, 7), 5);
        for a in 1..29 {
            assert_eq!(mul_mod(a, inv_mod(a, 29), 29), 1);
        }
    }

    #[test]
    fn quadratic_irreducibility_mod_7() {
        // X^2 - c is irreducible iff c is a non-residue
        for c in 0..7u64 {
            let nonres = ![0u64, 1, 2, 4].contains(&c);
            assert_eq!(fp_poly_is_irreducible(&[(7 - c) % 7, 0, 1], 7), nonres, "c = {c}");
        }
    }
}

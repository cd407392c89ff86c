/// Divisor power sums `σ_k(n) = Σ_{d | n} d^k` for `0 ≤ n ≤ limit`.
///
/// Linear sieve over the multiplicative structure. For each `n` it tracks
/// the prime-power part `p^e` belonging to the smallest prime factor,
/// together with `σ_k(p^e)`. Entry 0 is 0 by convention.
pub fn divisor_sums(k: u32, limit: usize) -> Vec<u128> {
    let mut sigma = vec![0u128; limit + 1];
    if limit == 0 {
        return sigma;
    }
    sigma[1] = 1;
    // (p^k)^e and σ_k(p^e) for the smallest-prime part of n.
    let mut top_power = vec![0u128; limit + 1];
    let mut part_sum = vec![0u128; limit + 1];
    let mut composite = vec![false; limit + 1];
    let mut primes: Vec<usize> = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i);
            let pk = (i as u128).pow(k);
            top_power[i] = pk;
            part_sum[i] = 1 + pk;
            sigma[i] = 1 + pk;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > limit {
                break;
            }
            composite[ip] = true;
            let pk = (p as u128).pow(k);
            if i % p == 0 {
                top_power[ip] = top_power[i] * pk;
                part_sum[ip] = part_sum[i] + top_power[ip];
                sigma[ip] = sigma[i] / part_sum[i] * part_sum[ip];
                break;
            }
            top_power[ip] = pk;
            part_sum[ip] = 1 + pk;
            sigma[ip] = sigma[i] * (1 + pk);
        }
    }
    sigma
}

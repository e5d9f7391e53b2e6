//! Fixed-value checks run by `klmu verify`.

use std::time::Instant;

use klmu::{
    count_standard_tableaux, factorial, flatten, knuth_interchange, reduce_pair, rsk, theta_sets,
    Coefficient, KlEngine, KlError, Permutation, QPoly, Side, ThetaSpec,
};

pub struct Outcome {
    pub name: String,
    pub expected: String,
    pub computed: String,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.expected == self.computed
    }
}

fn p(s: &str) -> Permutation {
    s.parse().expect("suite permutations are well formed")
}

struct Suite<'a, C> {
    engine: &'a KlEngine<C>,
    out: Vec<Outcome>,
}

impl<C: Coefficient> Suite<'_, C> {
    fn record(&mut self, name: impl Into<String>, expected: impl Into<String>, computed: impl Into<String>) {
        self.out.push(Outcome {
            name: name.into(),
            expected: expected.into(),
            computed: computed.into(),
        });
    }

    fn poly(&mut self, x: &str, w: &str, expected: &str) -> Result<(), KlError> {
        let got = self.engine.kl_poly(&p(x), &p(w))?;
        let want: QPoly<C> = expected.parse().expect("suite polynomials are well formed");
        self.record(format!("P({x},{w})"), want.to_string(), got.to_string());
        Ok(())
    }

    fn theta(&mut self, side: Side, s: usize, x: &str, v: &str, expected: &str) -> Result<(), KlError> {
        let spec = ThetaSpec::new(side, s, p(x), p(v));
        let got = self.engine.theta_sum(&spec)?;
        let label = match side {
            Side::Left => format!("Theta(s{s}.)[{x},{v}]"),
            Side::Right => format!("Theta(.s{s})[{x},{v}]"),
        };
        self.record(label, expected, got.to_string());
        Ok(())
    }

    fn theta_size(&mut self, side: Side, s: usize, x: &str, v: &str, total: usize, odd: usize) -> Result<(), KlError> {
        let spec = ThetaSpec::new(side, s, p(x), p(v));
        let sets = theta_sets(&spec)?;
        let lv = spec.v.length();
        let odd_count = sets.omega.iter().filter(|z| (lv - z.length()) % 2 == 1).count();
        self.record(
            format!("flush set [{x},{v}] s{s}"),
            format!("{total} flush, {odd} odd, 0 coatomic"),
            format!("{} flush, {odd_count} odd, {} coatomic", sets.omega.len(), sets.delta.len()),
        );
        Ok(())
    }

    fn pair(&mut self, x: &str, w: &str, lx: usize, lw: usize, poly: &str, mu: &str) -> Result<(), KlError> {
        let (xp, wp) = (p(x), p(w));
        self.record(format!("l({x}), l({w})"), format!("{lx}, {lw}"), format!("{}, {}", xp.length(), wp.length()));
        self.poly(x, w, poly)?;
        self.record(format!("mu({x},{w})"), mu, self.engine.mu(&xp, &wp)?.to_string());
        Ok(())
    }
}

pub fn core<C: Coefficient>(engine: &KlEngine<C>) -> Result<Vec<Outcome>, KlError> {
    let mut s = Suite { engine, out: Vec::new() };
    s.poly("1032", "3120", "1 + q")?;
    s.poly("0213", "2301", "1 + q")?;
    s.poly("315042", "534120", "1 + 3q + q^2")?;
    s.poly("3106542", "6345120", "1 + 4q + 4q^2 + q^3")?;
    s.theta(Side::Left, 2, "32170654", "72561340", "q^4")?;
    s.theta(Side::Right, 4, "321087654", "835617240", "0")?;
    s.theta(Side::Right, 3, "4321098765", "9461782350", "q^4 + q^5")?;
    s.theta_size(Side::Left, 2, "32170654", "72561340", 9, 3)?;
    s.theta_size(Side::Right, 3, "4321098765", "9461782350", 34, 17)?;
    let started = Instant::now();
    s.pair("4321098765", "9467182350", 20, 31, "1 + 7q + 19q^2 + 26q^3 + 17q^4 + 4q^5", "4")?;
    s.record(
        "S10 pair within 300 s",
        "true",
        (started.elapsed().as_secs() < 300).to_string(),
    );

    let (pt, qt) = rsk(&p("4265013"));
    s.record("rsk(4265013)", "P=013/25/46 Q=026/13/45", format!("P={pt} Q={qt}"));
    s.record("rwd(P)", "4625013", pt.row_word().to_string());
    s.record("cwd(P)", "4206513", pt.column_word().to_string());
    let fl = flatten(&[7, 6, 1, 9, 5, 3]).expect("distinct values");
    s.record("fl[7,6,1,9,5,3]", "430521", fl.to_string());
    let l2 = knuth_interchange(2, &p("31402")).map_or_else(|e| e.to_string(), |w| w.to_string());
    s.record("L2[3,1,4,0,2]", "31204", l2);
    let r = reduce_pair(&p("6491082753"), &p("9461782350"))?;
    s.record("reduce(6491082753,9461782350)", "350142 534120", format!("{} {}", r.x_tilde, r.w_tilde));
    s.record("SYT of size 16", "46206736", count_standard_tableaux(16).to_string());
    s.record("16!", "20922789888000", factorial(16).to_string());
    Ok(s.out)
}

pub fn extended<C: Coefficient>(engine: &KlEngine<C>) -> Result<Vec<Outcome>, KlError> {
    let mut s = Suite { engine, out: Vec::new() };
    s.pair(
        "0759321cba486d",
        "789ab0cd123456",
        32,
        47,
        "1 + 29q + 257q^2 + 908q^3 + 1292q^4 + 693q^5 + 111q^6 + 2q^7",
        "2",
    )?;
    s.pair(
        "0784321cba956d",
        "789ab0cd123456",
        32,
        47,
        "1 + 29q + 263q^2 + 960q^3 + 1346q^4 + 716q^5 + 124q^6 + 3q^7",
        "3",
    )?;
    s.pair(
        "54109832dc76bafe",
        "c810d942fa53b6e7",
        32,
        53,
        "1 + 14q + 92q^2 + 365q^3 + 931q^4 + 1536q^5 + 1610q^6 + 1039q^7 + 387q^8 + 72q^9 + 5q^10",
        "5",
    )?;
    s.pair(
        "76310cb542a98fed",
        "ca610fb732d84e95",
        39,
        60,
        "1 + 12q + 67q^2 + 226q^3 + 501q^4 + 755q^5 + 776q^6 + 533q^7 + 231q^8 + 56q^9 + 5q^10",
        "5",
    )?;
    Ok(s.out)
}

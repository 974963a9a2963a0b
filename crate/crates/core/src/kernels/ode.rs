#![allow(clippy::excessive_precision)]

//! Explicit Runge-Kutta integration with the Dormand-Prince 8(5,3) pair.
//!
//! Only the endpoint is returned; there is no dense output. Callers that
//! need values on a grid chain calls between grid points, or watch accepted
//! steps through [`integrate_ivp_observed`].

use super::SolverConfig;
use crate::error::{Error, Result, StallKind};

const SAFE: f64 = 0.9;
// h_new / h is kept in [1/6, 3].
const FAC_MIN: f64 = 1.0 / 3.0;
const FAC_MAX: f64 = 6.0;
// Lund stabilisation (PI control) exponent.
const BETA: f64 = 0.04;

/// Integrate `y' = system(x, y)` from `span.0` to `span.1`, returning the
/// state at `span.1`.
pub fn integrate_ivp<const D: usize, F>(
    system: F,
    y0: [f64; D],
    span: (f64, f64),
    config: &SolverConfig,
) -> Result<[f64; D]>
where
    F: Fn(f64, &[f64; D]) -> [f64; D],
{
    integrate_ivp_observed(system, y0, span, config, |_, _| {})
}

/// Same as [`integrate_ivp`], calling `observe(x, y)` after every accepted
/// step (including the final one).
pub fn integrate_ivp_observed<const D: usize, F, O>(
    system: F,
    y0: [f64; D],
    span: (f64, f64),
    config: &SolverConfig,
    mut observe: O,
) -> Result<[f64; D]>
where
    F: Fn(f64, &[f64; D]) -> [f64; D],
    O: FnMut(f64, &[f64; D]),
{
    config.validate()?;
    let (x0, x1) = span;
    if !x0.is_finite() || !x1.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "integration span must be finite, got [{x0}, {x1}]"
        )));
    }
    if y0.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("initial state is not finite".into()));
    }
    if x0 == x1 {
        return Ok(y0);
    }

    let dir = (x1 - x0).signum();
    let h_max = (x1 - x0).abs();
    let mut x = x0;
    let mut y = y0;
    let mut k1 = system(x, &y);
    check_finite(&k1, x)?;

    let mut h = match config.initial_step {
        Some(h) => h.min(h_max),
        None => initial_step(&system, x, &y, &k1, h_max, dir, config),
    } * dir;

    let mut fac_old: f64 = 1e-4;
    let mut last_rejected = false;
    let mut steps = 0usize;

    loop {
        if steps >= config.max_steps {
            return Err(Error::Integration {
                reached: x,
                kind: StallKind::StepBudget,
            });
        }
        if h.abs() <= 16.0 * f64::EPSILON * x.abs().max(1e-300) {
            return Err(Error::Integration {
                reached: x,
                kind: StallKind::StepUnderflow,
            });
        }
        let last = (x + 1.01 * h - x1) * dir >= 0.0;
        if last {
            h = x1 - x;
        }
        steps += 1;

        let trial = dop853_step(&system, x, &y, &k1, h);
        let (y_new, err) = match trial {
            Some(t) => {
                let err = scaled_error(&y, &t.y_new, &t.err5, &t.err3, h, config);
                (t.y_new, err)
            }
            None => ([f64::NAN; D], f64::INFINITY),
        };

        // A non-finite trial counts as a failed error test; keep shrinking.
        if !err.is_finite() {
            h *= 0.1;
            last_rejected = true;
            continue;
        }

        let expo = 1.0 / 8.0 - BETA * 0.2;
        let fac11 = err.powf(expo);
        let fac = (fac11 / fac_old.powf(BETA) / SAFE).clamp(1.0 / FAC_MAX, 1.0 / FAC_MIN);
        let mut h_new = h / fac;

        if err <= 1.0 {
            fac_old = err.max(1e-4);
            let x_new = if last { x1 } else { x + h };
            let k_new = system(x_new, &y_new);
            check_finite(&y_new, x)?;
            check_finite(&k_new, x)?;
            x = x_new;
            y = y_new;
            k1 = k_new;
            observe(x, &y);
            if last {
                return Ok(y);
            }
            if last_rejected {
                h_new = dir * h_new.abs().min(h.abs());
            }
            last_rejected = false;
        } else {
            h_new = h / (1.0 / FAC_MIN).min(fac11 / SAFE);
            last_rejected = true;
        }
        h = dir * h_new.abs().min(h_max);
    }
}

fn check_finite<const D: usize>(v: &[f64; D], x: f64) -> Result<()> {
    if v.iter().all(|c| c.is_finite()) {
        Ok(())
    } else {
        Err(Error::Integration {
            reached: x,
            kind: StallKind::NonFinite,
        })
    }
}

fn initial_step<const D: usize, F>(
    system: &F,
    x: f64,
    y: &[f64; D],
    f0: &[f64; D],
    h_max: f64,
    dir: f64,
    config: &SolverConfig,
) -> f64
where
    F: Fn(f64, &[f64; D]) -> [f64; D],
{
    let mut dnf = 0.0;
    let mut dny = 0.0;
    for i in 0..D {
        let sk = config.abs_tol + config.rel_tol * y[i].abs();
        dnf += (f0[i] / sk).powi(2);
        dny += (y[i] / sk).powi(2);
    }
    let mut h = if dnf <= 1e-10 || dny <= 1e-10 {
        1e-6
    } else {
        0.01 * (dny / dnf).sqrt()
    };
    h = h.min(h_max);

    let mut y1 = [0.0; D];
    for i in 0..D {
        y1[i] = y[i] + dir * h * f0[i];
    }
    let f1 = system(x + dir * h, &y1);
    let mut der2 = 0.0;
    for i in 0..D {
        let sk = config.abs_tol + config.rel_tol * y[i].abs();
        der2 += ((f1[i] - f0[i]) / sk).powi(2);
    }
    let der2 = der2.sqrt() / h;
    let der12 = der2.abs().max(dnf.sqrt());
    let h1 = if !der12.is_finite() {
        h * 1e-3
    } else if der12 <= 1e-15 {
        (h * 1e-3).max(1e-6)
    } else {
        (0.01 / der12).powf(1.0 / 8.0)
    };
    (100.0 * h).min(h1).min(h_max)
}

struct Trial<const D: usize> {
    y_new: [f64; D],
    err5: [f64; D],
    err3: [f64; D],
}

#[inline]
fn combo<const D: usize>(y: &[f64; D], h: f64, terms: &[(f64, &[f64; D])]) -> [f64; D] {
    let mut out = *y;
    for (coef, k) in terms {
        let c = h * coef;
        for i in 0..D {
            out[i] += c * k[i];
        }
    }
    out
}

fn dop853_step<const D: usize, F>(
    system: &F,
    x: f64,
    y: &[f64; D],
    k1: &[f64; D],
    h: f64,
) -> Option<Trial<D>>
where
    F: Fn(f64, &[f64; D]) -> [f64; D],
{
    let k2 = system(x + C2 * h, &combo(y, h, &[(A21, k1)]));
    let k3 = system(x + C3 * h, &combo(y, h, &[(A31, k1), (A32, &k2)]));
    let k4 = system(x + C4 * h, &combo(y, h, &[(A41, k1), (A43, &k3)]));
    let k5 = system(
        x + C5 * h,
        &combo(y, h, &[(A51, k1), (A53, &k3), (A54, &k4)]),
    );
    let k6 = system(
        x + C6 * h,
        &combo(y, h, &[(A61, k1), (A64, &k4), (A65, &k5)]),
    );
    let k7 = system(
        x + C7 * h,
        &combo(y, h, &[(A71, k1), (A74, &k4), (A75, &k5), (A76, &k6)]),
    );
    let k8 = system(
        x + C8 * h,
        &combo(
            y,
            h,
            &[(A81, k1), (A84, &k4), (A85, &k5), (A86, &k6), (A87, &k7)],
        ),
    );
    let k9 = system(
        x + C9 * h,
        &combo(
            y,
            h,
            &[
                (A91, k1),
                (A94, &k4),
                (A95, &k5),
                (A96, &k6),
                (A97, &k7),
                (A98, &k8),
            ],
        ),
    );
    let k10 = system(
        x + C10 * h,
        &combo(
            y,
            h,
            &[
                (A101, k1),
                (A104, &k4),
                (A105, &k5),
                (A106, &k6),
                (A107, &k7),
                (A108, &k8),
                (A109, &k9),
            ],
        ),
    );
    let k11 = system(
        x + C11 * h,
        &combo(
            y,
            h,
            &[
                (A111, k1),
                (A114, &k4),
                (A115, &k5),
                (A116, &k6),
                (A117, &k7),
                (A118, &k8),
                (A119, &k9),
                (A1110, &k10),
            ],
        ),
    );
    let y12 = combo(
        y,
        h,
        &[
            (A121, k1),
            (A124, &k4),
            (A125, &k5),
            (A126, &k6),
            (A127, &k7),
            (A128, &k8),
            (A129, &k9),
            (A1210, &k10),
            (A1211, &k11),
        ],
    );
    let k12 = system(x + h, &y12);

    let mut slope = [0.0; D];
    let mut err5 = [0.0; D];
    let mut err3 = [0.0; D];
    for i in 0..D {
        slope[i] = B1 * k1[i]
            + B6 * k6[i]
            + B7 * k7[i]
            + B8 * k8[i]
            + B9 * k9[i]
            + B10 * k10[i]
            + B11 * k11[i]
            + B12 * k12[i];
        err3[i] = slope[i] - BHH1 * k1[i] - BHH2 * k9[i] - BHH3 * k12[i];
        err5[i] = ER1 * k1[i]
            + ER6 * k6[i]
            + ER7 * k7[i]
            + ER8 * k8[i]
            + ER9 * k9[i]
            + ER10 * k10[i]
            + ER11 * k11[i]
            + ER12 * k12[i];
    }
    let mut y_new = *y;
    for i in 0..D {
        y_new[i] += h * slope[i];
    }
    if y_new.iter().chain(err5.iter()).any(|v| !v.is_finite()) {
        return None;
    }
    Some(Trial { y_new, err5, err3 })
}

fn scaled_error<const D: usize>(
    y: &[f64; D],
    y_new: &[f64; D],
    err5: &[f64; D],
    err3: &[f64; D],
    h: f64,
    config: &SolverConfig,
) -> f64 {
    let mut e5 = 0.0;
    let mut e3 = 0.0;
    for i in 0..D {
        let sk = config.abs_tol + config.rel_tol * y[i].abs().max(y_new[i].abs());
        e5 += (err5[i] / sk).powi(2);
        e3 += (err3[i] / sk).powi(2);
    }
    let mut deno = e5 + 0.01 * e3;
    if deno <= 0.0 {
        deno = 1.0;
    }
    h.abs() * e5 * (1.0 / (deno * D as f64)).sqrt()
}

// Dormand-Prince 8(5,3) tableau (Hairer, Norsett & Wanner).
const C2: f64 = 0.526001519587677318785587544488E-01;
const C3: f64 = 0.789002279381515978178381316732E-01;
const C4: f64 = 0.118350341907227396726757197510E+00;
const C5: f64 = 0.281649658092772603273242802490E+00;
const C6: f64 = 0.333333333333333333333333333333E+00;
const C7: f64 = 0.25E+00;
const C8: f64 = 0.307692307692307692307692307692E+00;
const C9: f64 = 0.651282051282051282051282051282E+00;
const C10: f64 = 0.6E+00;
const C11: f64 = 0.857142857142857142857142857142E+00;

const A21: f64 = 5.26001519587677318785587544488E-2;
const A31: f64 = 1.97250569845378994544595329183E-2;
const A32: f64 = 5.91751709536136983633785987549E-2;
const A41: f64 = 2.95875854768068491816892993775E-2;
const A43: f64 = 8.87627564304205475450678981324E-2;
const A51: f64 = 2.41365134159266685502369798665E-1;
const A53: f64 = -8.84549479328286085344864962717E-1;
const A54: f64 = 9.24834003261792003115737966543E-1;
const A61: f64 = 3.7037037037037037037037037037E-2;
const A64: f64 = 1.70828608729473871279604482173E-1;
const A65: f64 = 1.25467687566822425016691814123E-1;
const A71: f64 = 3.7109375E-2;
const A74: f64 = 1.70252211019544039314978060272E-1;
const A75: f64 = 6.02165389804559606850219397283E-2;
const A76: f64 = -1.7578125E-2;
const A81: f64 = 3.70920001185047927108779319836E-2;
const A84: f64 = 1.70383925712239993810214054705E-1;
const A85: f64 = 1.07262030446373284651809199168E-1;
const A86: f64 = -1.53194377486244017527936158236E-2;
const A87: f64 = 8.27378916381402288758473766002E-3;
const A91: f64 = 6.24110958716075717114429577812E-1;
const A94: f64 = -3.36089262944694129406857109825E0;
const A95: f64 = -8.68219346841726006818189891453E-1;
const A96: f64 = 2.75920996994467083049415600797E1;
const A97: f64 = 2.01540675504778934086186788979E1;
const A98: f64 = -4.34898841810699588477366255144E1;
const A101: f64 = 4.77662536438264365890433908527E-1;
const A104: f64 = -2.48811461997166764192642586468E0;
const A105: f64 = -5.90290826836842996371446475743E-1;
const A106: f64 = 2.12300514481811942347288949897E1;
const A107: f64 = 1.52792336328824235832596922938E1;
const A108: f64 = -3.32882109689848629194453265587E1;
const A109: f64 = -2.03312017085086261358222928593E-2;
const A111: f64 = -9.3714243008598732571704021658E-1;
const A114: f64 = 5.18637242884406370830023853209E0;
const A115: f64 = 1.09143734899672957818500254654E0;
const A116: f64 = -8.14978701074692612513997267357E0;
const A117: f64 = -1.85200656599969598641566180701E1;
const A118: f64 = 2.27394870993505042818970056734E1;
const A119: f64 = 2.49360555267965238987089396762E0;
const A1110: f64 = -3.0467644718982195003823669022E0;
const A121: f64 = 2.27331014751653820792359768449E0;
const A124: f64 = -1.05344954667372501984066689879E1;
const A125: f64 = -2.00087205822486249909675718444E0;
const A126: f64 = -1.79589318631187989172765950534E1;
const A127: f64 = 2.79488845294199600508499808837E1;
const A128: f64 = -2.85899827713502369474065508674E0;
const A129: f64 = -8.87285693353062954433549289258E0;
const A1210: f64 = 1.23605671757943030647266201528E1;
const A1211: f64 = 6.43392746015763530355970484046E-1;

const B1: f64 = 5.42937341165687622380535766363E-2;
const B6: f64 = 4.45031289275240888144113950566E0;
const B7: f64 = 1.89151789931450038304281599044E0;
const B8: f64 = -5.8012039600105847814672114227E0;
const B9: f64 = 3.1116436695781989440891606237E-1;
const B10: f64 = -1.52160949662516078556178806805E-1;
const B11: f64 = 2.01365400804030348374776537501E-1;
const B12: f64 = 4.47106157277725905176885569043E-2;

const BHH1: f64 = 0.244094488188976377952755905512E+00;
const BHH2: f64 = 0.733846688281611857341361741547E+00;
const BHH3: f64 = 0.220588235294117647058823529412E-01;

const ER1: f64 = 0.1312004499419488073250102996E-01;
const ER6: f64 = -0.1225156446376204440720569753E+01;
const ER7: f64 = -0.4957589496572501915214079952E+00;
const ER8: f64 = 0.1664377182454986536961530415E+01;
const ER9: f64 = -0.3503288487499736816886487290E+00;
const ER10: f64 = 0.3341791187130174790297318841E+00;
const ER11: f64 = 0.8192320648511571246570742613E-01;
const ER12: f64 = -0.2235530786388629525884427845E-01;

use gfbm::specfun::{self, SeriesControl};

fn main() -> gfbm::Result<()> {
    let ctl = SeriesControl::default();
    println!("N(1.96)            = {:.16}", specfun::normal_cdf(1.96));
    println!("lnΓ(7.3)           = {:.16}", specfun::ln_gamma(7.3)?);
    println!("P(2.5, 3.7)        = {:.16}", specfun::reg_lower_gamma(2.5, 3.7)?);
    println!("I_2(3.1)           = {:.16}", specfun::bessel_i(2.0, 3.1, ctl)?);
    println!("e^-x I_0.5(5000)   = {:.16}", specfun::bessel_i_scaled(0.5, 5000.0, ctl)?);
    println!("M(1.4, 2.4, -1.3)  = {:.16}", specfun::kummer_m(1.4, 2.4, -1.3, ctl)?);
    println!("M_(0.7,1.2)(2.5)   = {:.16}", specfun::whittaker_m(0.7, 1.2, 2.5)?);
    println!("Q(3.2; 2.8, 1.7)   = {:.16}", specfun::noncentral_chi2_sf(3.2, 2.8, 1.7, ctl)?);
    Ok(())
}

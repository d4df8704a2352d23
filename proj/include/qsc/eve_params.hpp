#ifndef QSC_EVE_PARAMS_HPP
#define QSC_EVE_PARAMS_HPP

namespace qsc {

// Eve's active-attack beamsplitter/source parameters, solved so that the
// power levels Alice and Bob observe are unchanged and a fraction f of Bob's
// input light comes from Alice.
struct ActiveEveParams {
  double kappa_AB = 1.0;  // injection beamsplitter transmissivity
  double kappa_BA = 1.0;  // tap beamsplitter transmissivity
  double N_Eve = 0.0;     // Eve's SPDC brightness
};

}  // namespace qsc

#endif

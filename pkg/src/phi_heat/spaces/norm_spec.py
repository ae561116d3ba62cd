from phi_heat.util.phi_heat_errors                                  import ParameterError


class NormSpec():

    '''
    Parameters of a weighted parabolic Hoelder norm ``||.||_{k, alpha, gamma}`` and of its sampled estimator.

    :param float alpha: Hoelder exponent in ``(0, 1)``
    :param int k: number of Phi-derivatives (time derivatives count twice)
    :param float gamma: weight exponent; fields are divided by ``x^gamma`` before measuring
    :param int pair_budget: number of sampled pairs for seminorm estimates, at least 1000
    :param int seed: seed of the pair stream
    :param focus: optional array of flat spatial indices from which the first point of every pair is drawn
    '''
    MIN_PAIR_BUDGET                                     = 1000

    def __init__(self, alpha, k=0, gamma=0.0, pair_budget=2000, seed=0, focus=None):

        if not 0 < alpha < 1:
            raise ParameterError("Hoelder exponent must lie in (0, 1), got alpha=" + str(alpha))
        if int(k) != k or k < 0:
            raise ParameterError("Derivative order must be a nonnegative integer, got k=" + str(k))
        if int(pair_budget) != pair_budget or pair_budget < self.MIN_PAIR_BUDGET:
            raise ParameterError("pair_budget must be an integer >= " + str(self.MIN_PAIR_BUDGET)
                                 + ", got " + str(pair_budget))

        self.alpha                                      = float(alpha)
        self.k                                          = int(k)
        self.gamma                                      = float(gamma)
        self.pair_budget                                = int(pair_budget)
        self.seed                                       = int(seed)
        self.focus                                      = focus

    def but(self, **overrides):
        '''
        :return: a copy of this spec with some attributes replaced, e.g. ``spec.but(k=0)``
        :rtype: NormSpec
        '''
        params                                          = dict(alpha=self.alpha, k=self.k, gamma=self.gamma,
                                                               pair_budget=self.pair_budget, seed=self.seed,
                                                               focus=self.focus)
        params.update(overrides)
        return NormSpec(**params)


class HolderReport():

    '''
    Result of measuring a field in ``x^gamma C^{k, alpha}``.

    :param float sup_norm: sup of the weighted field
    :param float alpha_seminorm: sampled seminorm of the weighted field
    :param float total: sum of sup norm and seminorm over every derivative word
    :param argmax_pair: the pair ``((point, t), (point', t'))`` achieving the largest seminorm among all words
    :param list terms: ``(word, sup, seminorm)`` per derivative word; a word is a string such as ``"t"`` or ``"V0V1"``
    '''
    def __init__(self, sup_norm, alpha_seminorm, total, argmax_pair=None, terms=None):

        self.sup_norm                                   = float(sup_norm)
        self.alpha_seminorm                             = float(alpha_seminorm)
        self.total                                      = float(total)
        self.argmax_pair                                = argmax_pair
        self.terms                                      = [] if terms is None else terms

    def argmax_pair_text(self):
        if self.argmax_pair is None:
            return ""
        (p1, t1), (p2, t2)                              = self.argmax_pair
        fmt                                             = lambda p, t: "(" + " ".join("{:.6g}".format(c) for c in p) \
                                                                        + " | t=" + "{:.6g}".format(t) + ")"
        return fmt(p1, t1) + "-" + fmt(p2, t2)

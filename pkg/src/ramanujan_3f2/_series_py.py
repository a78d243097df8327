"""Pure-Python summation kernel (fallback for the compiled ``_series_c``).

Arithmetic is spelled out on real and imaginary parts so that both
backends perform the same floating-point operations in the same order.
"""

from math import sqrt

RUNNING = 0
TERMINATED = 1
TOLERANCE = 2


def advance(num, den, z, state, tol, nsteps):
    """Add up to ``nsteps`` terms of a hypergeometric-type series.

    ``state`` is ``(k, t, s, comp, streak, ratio)``: index of the next term,
    the next term itself, the compensated partial sum and its Kahan
    compensation, the current run of small terms, and the modulus of the
    last term ratio.  Returns ``(state, status, added)``.
    """
    k, t, s, comp, streak, ratio = state
    t_re, t_im = t.real, t.imag
    s_re, s_im = s.real, s.imag
    c_re, c_im = comp.real, comp.imag
    z_re, z_im = z.real, z.imag
    nums = [(a.real, a.imag) for a in num]
    dens = [(b.real, b.imag) for b in den]
    tol2 = tol * tol
    status = RUNNING
    added = 0
    while added < nsteps:
        y_re = t_re - c_re
        y_im = t_im - c_im
        u_re = s_re + y_re
        u_im = s_im + y_im
        c_re = (u_re - s_re) - y_re
        c_im = (u_im - s_im) - y_im
        s_re = u_re
        s_im = u_im
        added += 1

        if t_re * t_re + t_im * t_im <= tol2 * (s_re * s_re + s_im * s_im):
            streak += 1
        else:
            streak = 0

        kf = float(k)
        p_re, p_im = z_re, z_im
        hit_zero = False
        for a_re, a_im in nums:
            f_re = a_re + kf
            f_im = a_im
            if f_re == 0.0 and f_im == 0.0:
                hit_zero = True
            w = p_re * f_re - p_im * f_im
            p_im = p_re * f_im + p_im * f_re
            p_re = w
        if hit_zero:
            t_re = 0.0
            t_im = 0.0
            k += 1
            status = TERMINATED
            break
        q_re, q_im = kf + 1.0, 0.0
        for b_re, b_im in dens:
            f_re = b_re + kf
            f_im = b_im
            w = q_re * f_re - q_im * f_im
            q_im = q_re * f_im + q_im * f_re
            q_re = w
        qq = q_re * q_re + q_im * q_im
        r_re = (p_re * q_re + p_im * q_im) / qq
        r_im = (p_im * q_re - p_re * q_im) / qq
        w = t_re * r_re - t_im * r_im
        t_im = t_re * r_im + t_im * r_re
        t_re = w
        ratio = sqrt(r_re * r_re + r_im * r_im)
        k += 1

        if streak >= 3:
            status = TOLERANCE
            break

    state = (k, complex(t_re, t_im), complex(s_re, s_im), complex(c_re, c_im), streak, ratio)
    return state, status, added

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled summation kernel; mirrors ``_series_py.advance`` operation for operation."""

from cpython.mem cimport PyMem_Free, PyMem_Malloc
from libc.math cimport sqrt

cdef enum:
    RUNNING = 0
    TERMINATED = 1
    TOLERANCE = 2


cdef double *_pack(params) except NULL:
    cdef Py_ssize_t n = len(params)
    cdef double *buf = <double *> PyMem_Malloc((2 * n + 1) * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        v = complex(params[i])
        buf[2 * i] = v.real
        buf[2 * i + 1] = v.imag
    return buf


def advance(num, den, z, state, double tol, long nsteps):
    cdef Py_ssize_t nn = len(num), nd = len(den), i
    cdef double *pa = _pack(num)
    cdef double *pb
    try:
        pb = _pack(den)
    except MemoryError:
        PyMem_Free(pa)
        raise

    k_obj, t, s, comp, streak_obj, ratio_obj = state
    cdef long long k = k_obj
    cdef long streak = streak_obj
    cdef double ratio = ratio_obj
    t = complex(t)
    s = complex(s)
    comp = complex(comp)
    z = complex(z)
    cdef double t_re = t.real, t_im = t.imag
    cdef double s_re = s.real, s_im = s.imag
    cdef double c_re = comp.real, c_im = comp.imag
    cdef double z_re = z.real, z_im = z.imag
    cdef double tol2 = tol * tol
    cdef double y_re, y_im, u_re, u_im, kf, p_re, p_im, q_re, q_im
    cdef double f_re, f_im, w, qq, r_re, r_im
    cdef int hit_zero
    cdef int status = RUNNING
    cdef long added = 0

    with nogil:
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

            kf = <double> k
            p_re = z_re
            p_im = z_im
            hit_zero = 0
            for i in range(nn):
                f_re = pa[2 * i] + kf
                f_im = pa[2 * i + 1]
                if f_re == 0.0 and f_im == 0.0:
                    hit_zero = 1
                w = p_re * f_re - p_im * f_im
                p_im = p_re * f_im + p_im * f_re
                p_re = w
            if hit_zero:
                t_re = 0.0
                t_im = 0.0
                k += 1
                status = TERMINATED
                break
            q_re = kf + 1.0
            q_im = 0.0
            for i in range(nd):
                f_re = pb[2 * i] + kf
                f_im = pb[2 * i + 1]
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

    PyMem_Free(pa)
    PyMem_Free(pb)
    new_state = (k, complex(t_re, t_im), complex(s_re, s_im), complex(c_re, c_im), streak, ratio)
    return new_state, status, added

#include "memnet/io.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace memnet {

namespace {

Rat rat_pow_int(const Rat& x, unsigned long p) {
    Int num, den;
    mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), p);
    mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), p);
    return make_rat(num, den);
}

[[noreturn]] void fail_line(int line, const std::string& what) {
    throw std::runtime_error("line " + std::to_string(line) + ": " + what);
}

std::string next_line(std::istream& is, int& line) {
    std::string s;
    if (!std::getline(is, s)) fail_line(line + 1, "unexpected end of file");
    ++line;
    return s;
}

// Parses "key=value" returning value; checks the key.
std::string keyed(const std::string& token, const std::string& key, int line) {
    if (token.size() < key.size() + 1 || token.compare(0, key.size(), key) != 0 ||
        token[key.size()] != '=')
        fail_line(line, "expected '" + key + "=<value>', got '" + token + "'");
    return token.substr(key.size() + 1);
}

int to_int(const std::string& s, int line) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        fail_line(line, "malformed integer '" + s + "'");
    }
}

}  // namespace

LabeledDataset gen_dataset(int N, int d, int C, const Rat& delta, unsigned long seed) {
    if (N < 1 || d < 1 || C < 2 || delta <= 0)
        throw std::invalid_argument("gen_dataset: bad arguments");
    // Packing plausibility proxy: N * (delta/2)^d must not exceed the
    // enclosing cube volume 2^d (in units of the unit radius).
    if (Rat(N) * rat_pow_int(delta / 2, static_cast<unsigned long>(d)) > pow2(d))
        throw std::invalid_argument(
            "gen_dataset: requested packing is implausible; reduce N or delta");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coord(-(1L << 16), 1L << 16);
    std::uniform_int_distribution<int> label(1, C);
    // Proposal cube side: the full [-1,1] cube keeps a usable in-ball
    // acceptance rate only in low dimension; from d >= 3 shrink to the
    // [-1/ceil(sqrt(d)), 1/ceil(sqrt(d))] cube, which lies inside the ball.
    long shrink = 1;
    while (shrink * shrink < d) ++shrink;
    if (d <= 2) shrink = 1;
    const Int den = int_pow2(16) * shrink;
    const Rat dsq = delta * delta;

    LabeledDataset ds;
    ds.d = d;
    ds.C = C;
    ds.delta = delta;
    long attempts = 0;
    const long budget = 2000L * N + 20000L;
    while (ds.N() < N) {
        if (++attempts > budget)
            throw std::runtime_error(
                "gen_dataset: acceptance stalled; reduce N or delta");
        std::vector<Rat> p(d);
        Rat sq(0);
        for (int k = 0; k < d; ++k) {
            p[k] = make_rat(Int(coord(rng)), den);
            sq += p[k] * p[k];
        }
        if (sq > 1) continue;
        bool ok = true;
        for (const auto& q : ds.points) {
            Rat dist(0);
            for (int k = 0; k < d; ++k) {
                const Rat diff = p[k] - q[k];
                dist += diff * diff;
            }
            if (dist < dsq) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        ds.points.push_back(std::move(p));
        ds.labels.push_back(label(rng));
    }
    return ds;
}

void write_dataset(std::ostream& os, const LabeledDataset& ds) {
    os << "memnet-dataset v1\n";
    os << "d=" << ds.d << " n=" << ds.N() << " c=" << ds.C
       << " delta=" << rat_to_string(ds.delta) << "\n";
    for (int i = 0; i < ds.N(); ++i) {
        for (int k = 0; k < ds.d; ++k) os << rat_to_string(ds.points[i][k]) << " ";
        os << ds.labels[i] << "\n";
    }
}

LabeledDataset read_dataset(std::istream& is) {
    int line = 0;
    if (next_line(is, line) != "memnet-dataset v1") fail_line(line, "bad dataset header");
    std::istringstream hdr(next_line(is, line));
    std::string td, tn, tc, tdelta;
    if (!(hdr >> td >> tn >> tc >> tdelta)) fail_line(line, "malformed dataset size line");
    LabeledDataset ds;
    ds.d = to_int(keyed(td, "d", line), line);
    const int N = to_int(keyed(tn, "n", line), line);
    ds.C = to_int(keyed(tc, "c", line), line);
    try {
        ds.delta = rat_from_string(keyed(tdelta, "delta", line));
    } catch (const std::exception& e) {
        fail_line(line, e.what());
    }
    for (int i = 0; i < N; ++i) {
        std::istringstream row(next_line(is, line));
        std::vector<Rat> p(ds.d);
        std::string tok;
        for (int k = 0; k < ds.d; ++k) {
            if (!(row >> tok)) fail_line(line, "missing coordinate");
            try {
                p[k] = rat_from_string(tok);
            } catch (const std::exception& e) {
                fail_line(line, e.what());
            }
        }
        int lab = 0;
        if (!(row >> lab)) fail_line(line, "missing label");
        if (row >> tok) fail_line(line, "trailing token '" + tok + "'");
        ds.points.push_back(std::move(p));
        ds.labels.push_back(lab);
    }
    validate_dataset(ds);
    return ds;
}

void write_network(std::ostream& os, const ReluNetwork& net) {
    os << "memnet-net v1\n";
    os << "in=" << net.input_dim() << " out=" << net.output_dim() << " hidden=";
    const auto& layers = net.layers();
    for (std::size_t i = 0; i + 1 < layers.size(); ++i)
        os << (i ? "," : "") << layers[i].out_dim();
    os << "\n";
    for (std::size_t i = 0; i < layers.size(); ++i) {
        os << "layer " << i << "\n";
        for (int r = 0; r < layers[i].out_dim(); ++r) {
            for (int c = 0; c < layers[i].in_dim(); ++c)
                os << rat_to_string(layers[i].weight[r][c]) << " ";
            os << rat_to_string(layers[i].bias[r]) << "\n";
        }
    }
}

ReluNetwork read_network(std::istream& is) {
    int line = 0;
    if (next_line(is, line) != "memnet-net v1") fail_line(line, "bad network header");
    std::istringstream hdr(next_line(is, line));
    std::string tin, tout, thid;
    if (!(hdr >> tin >> tout)) fail_line(line, "malformed network size line");
    const int in_dim = to_int(keyed(tin, "in", line), line);
    const int out_dim = to_int(keyed(tout, "out", line), line);
    std::vector<int> hidden;
    if (hdr >> thid) {
        std::string list = keyed(thid, "hidden", line);
        std::istringstream hs(list);
        std::string item;
        while (std::getline(hs, item, ',')) hidden.push_back(to_int(item, line));
    } else {
        fail_line(line, "missing hidden= field");
    }

    std::vector<int> dims;
    dims.push_back(in_dim);
    for (int h : hidden) dims.push_back(h);
    dims.push_back(out_dim);

    std::vector<AffineLayer> layers;
    for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
        std::istringstream tag(next_line(is, line));
        std::string word;
        int idx = -1;
        if (!(tag >> word >> idx) || word != "layer" || idx != static_cast<int>(i))
            fail_line(line, "expected 'layer " + std::to_string(i) + "'");
        AffineLayer l = zero_layer(dims[i + 1], dims[i]);
        for (int r = 0; r < dims[i + 1]; ++r) {
            std::istringstream row(next_line(is, line));
            std::string tok;
            for (int c = 0; c < dims[i]; ++c) {
                if (!(row >> tok)) fail_line(line, "missing weight");
                try {
                    l.weight[r][c] = rat_from_string(tok);
                } catch (const std::exception& e) {
                    fail_line(line, e.what());
                }
            }
            if (!(row >> tok)) fail_line(line, "missing bias");
            try {
                l.bias[r] = rat_from_string(tok);
            } catch (const std::exception& e) {
                fail_line(line, e.what());
            }
            if (row >> tok) fail_line(line, "trailing token '" + tok + "'");
        }
        layers.push_back(std::move(l));
    }
    try {
        return ReluNetwork(std::move(layers));
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("network structure invalid: ") + e.what());
    }
}

void write_dataset_file(const std::string& path, const LabeledDataset& ds) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_dataset(os, ds);
}

LabeledDataset read_dataset_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open: " + path);
    return read_dataset(is);
}

void write_network_file(const std::string& path, const ReluNetwork& net) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_network(os, net);
}

ReluNetwork read_network_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open: " + path);
    return read_network(is);
}

}  // namespace memnet

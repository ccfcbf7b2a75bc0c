#pragma once

#include "nvff/device_models.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace nvff {

using NodeId = int;
constexpr NodeId kGround = -1;

struct Resistor {
    NodeId a = kGround, b = kGround;
    double r = 0.0; // Ohm
};

struct Capacitor {
    NodeId a = kGround, b = kGround;
    double c = 0.0; // F
};

// Gate may be an internal node or a forced control rail; both are NodeIds.
struct Fet {
    TransistorParams p;
    NodeId drain = kGround, gate = kGround, source = kGround;
};

// Tunnel junction between an electrode node (top) and a strip node (bottom).
// `bundle` is 1 or 2 and selects which pillar of the bound device it is.
struct TunnelJunction {
    NodeId top = kGround, bottom = kGround;
    int bundle = 1;
    MtjParams mtj;
};

// A node whose voltage is forced to follow a named schedule signal.
struct SourceRef {
    NodeId node = kGround;
    std::string signal;
};

struct Netlist {
    std::vector<std::string> node_names;
    std::vector<Resistor> resistors;
    std::vector<Capacitor> capacitors;
    std::vector<Fet> fets;
    std::vector<TunnelJunction> junctions;
    std::vector<SourceRef> sources;
    // Strip resistor indices in terminal-1 to terminal-2 order, and for each
    // junction the indices of its two adjacent segments.
    std::vector<int> strip_segments;
    std::vector<std::pair<int, int>> junction_segments;

    NodeId add_node(const std::string& name) {
        node_names.push_back(name);
        return static_cast<NodeId>(node_names.size()) - 1;
    }

    NodeId node(const std::string& name) const {
        for (size_t i = 0; i < node_names.size(); ++i)
            if (node_names[i] == name) return static_cast<NodeId>(i);
        throw std::out_of_range("no node named " + name);
    }

    bool has_node(const std::string& name) const {
        for (const auto& n : node_names)
            if (n == name) return true;
        return false;
    }

    int add_resistor(NodeId a, NodeId b, double r) {
        resistors.push_back({a, b, r});
        return static_cast<int>(resistors.size()) - 1;
    }

    void add_capacitor(NodeId a, NodeId b, double c) {
        capacitors.push_back({a, b, c});
    }

    void add_fet(const TransistorParams& p, NodeId d, NodeId g, NodeId s) {
        fets.push_back({p, d, g, s});
    }

    void add_junction(NodeId top, NodeId bottom, int bundle,
                      const MtjParams& mtj) {
        junctions.push_back({top, bottom, bundle, mtj});
    }

    void force(NodeId n, const std::string& signal) {
        sources.push_back({n, signal});
    }

    bool is_forced(NodeId n) const {
        for (const auto& s : sources)
            if (s.node == n) return true;
        return false;
    }

    // Lumps every fet gate capacitance plus a fixed parasitic on each node.
    void attach_node_capacitance(double c_parasitic) {
        for (size_t n = 0; n < node_names.size(); ++n) {
            double c = c_parasitic;
            for (const auto& f : fets)
                if (f.gate == static_cast<NodeId>(n)) c += f.p.gate_cap();
            add_capacitor(static_cast<NodeId>(n), kGround, c);
        }
    }
};

} // namespace nvff

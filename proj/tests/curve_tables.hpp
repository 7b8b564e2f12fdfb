// Rows of the two f(t) curves published for DSBS(0.1) and DSBS(0.2),
// copied verbatim as (t, f(t)).
#pragma once

#include <array>
#include <utility>

namespace coordination::test {

inline constexpr std::array<std::pair<double, double>, 71> kCurveA01{{
    {0, 0.436380283400076},
    {0.00279999999999991, 0.431499055555295},
    {0.00600000000000001, 0.426557884692081},
    {0.00950000000000006, 0.421713981411722},
    {0.0134000000000001, 0.4168360930299},
    {0.0177, 0.411951459591998},
    {0.0224, 0.407082762497141},
    {0.0275000000000001, 0.40224869478021},
    {0.0329999999999999, 0.39746451880138},
    {0.0388999999999999, 0.392742573837561},
    {0.0452999999999999, 0.388021828003421},
    {0.0521, 0.383391652121826},
    {0.0593999999999999, 0.37879591957208},
    {0.0671999999999999, 0.374251203473264},
    {0.0756000000000001, 0.369718728770988},
    {0.0845, 0.365268373707793},
    {0.0940000000000001, 0.360862568888059},
    {0.1042, 0.356474776169439},
    {0.1151, 0.352125858796536},
    {0.1267, 0.347832816323742},
    {0.1391, 0.343576307207822},
    {0.1523, 0.339374487447541},
    {0.1663, 0.33524216255484},
    {0.1813, 0.331138614803407},
    {0.1972, 0.327109445067336},
    {0.2142, 0.323121673675278},
    {0.2323, 0.319195303007056},
    {0.2515, 0.315347013931011},
    {0.2719, 0.311572886227332},
    {0.2936, 0.307872200330448},
    {0.3167, 0.304246959760662},
    {0.3412, 0.300715313268914},
    {0.3436, 0.300527573378146},
    {0.3608, 0.312924083055196},
    {0.378, 0.32494217372874},
    {0.3952, 0.336585280718171},
    {0.4124, 0.347856966449423},
    {0.4296, 0.358760853917631},
    {0.4468, 0.369300576421957},
    {0.464, 0.379479739618213},
    {0.4812, 0.389301892950686},
    {0.4984, 0.398770508260472},
    {0.5156, 0.407888963906333},
    {0.5328, 0.416660533132085},
    {0.55, 0.425088375711256},
    {0.5672, 0.433175532122551},
    {0.5844, 0.440924919678386},
    {0.6016, 0.448339330157219},
    {0.6188, 0.45542142858892},
    {0.636, 0.462173752918356},
    {0.6532, 0.468598714331232},
    {0.6705, 0.474733116308751},
    {0.6878, 0.480540847546466},
    {0.7051, 0.486023979838117},
    {0.7224, 0.491184460397482},
    {0.7397, 0.496024113604635},
    {0.757, 0.500544642801195},
    {0.7743, 0.504747632091284},
    {0.7916, 0.508634548114012},
    {0.8089, 0.512206741760539},
    {0.8262, 0.515465449814522},
    {0.8435, 0.518411796499324},
    {0.8608, 0.521046794918987},
    {0.8781, 0.523371348382871},
    {0.8954, 0.525386251606146},
    {0.9127, 0.5270921917801},
    {0.93, 0.528489749507709},
    {0.9473, 0.529579399600975},
    {0.9646, 0.530361511737473},
    {0.9819, 0.530836350974203},
    {1, 0.531004406410719},
}};

inline constexpr std::array<std::pair<double, double>, 58> kCurveA02{{
    {0, 0.352952450491633},
    {0.00570000000000004, 0.346612136545404},
    {0.0119, 0.340182625832955},
    {0.0185, 0.333790024675116},
    {0.0255000000000001, 0.327444257460282},
    {0.0328999999999999, 0.321154344760102},
    {0.0407, 0.314928388317052},
    {0.0489999999999999, 0.308700802941808},
    {0.0577000000000001, 0.302559241628198},
    {0.0669, 0.29644380631286},
    {0.0766, 0.290369631440877},
    {0.0868, 0.284349818431383},
    {0.0974999999999999, 0.278395695856848},
    {0.1087, 0.272517046729866},
    {0.1205, 0.26667419966715},
    {0.1328, 0.26092792792823},
    {0.1457, 0.255241148140532},
    {0.1592, 0.249625991853822},
    {0.1734, 0.244054936128429},
    {0.1882, 0.23857965686195},
    {0.2037, 0.233173980752178},
    {0.2199, 0.227850460366026},
    {0.2369, 0.222590150843885},
    {0.2546, 0.217436417826332},
    {0.2731, 0.212371111851642},
    {0.2924, 0.207406515164156},
    {0.3125, 0.202553633843804},
    {0.3335, 0.19780045854464},
    {0.3554, 0.193160168361872},
    {0.3782, 0.188644769263606},
    {0.4019, 0.184265264727702},
    {0.4265, 0.180031818015786},
    {0.4427, 0.177497550666439},
    {0.4659, 0.185639679534829},
    {0.4888, 0.193353744760011},
    {0.5116, 0.2007111749631},
    {0.5342, 0.207682616998486},
    {0.5567, 0.214302586315447},
    {0.5791, 0.220573208483627},
    {0.6014, 0.226497077596756},
    {0.6236, 0.232077161518353},
    {0.6457, 0.237316725103683},
    {0.6677, 0.24221926776353},
    {0.6897, 0.246808623997168},
    {0.7116, 0.251065634178802},
    {0.7335, 0.255011557787713},
    {0.7554, 0.258646179287083},
    {0.7772, 0.261954891546168},
    {0.799, 0.264954916931875},
    {0.8208, 0.267646216875044},
    {0.8426, 0.270028784279182},
    {0.8644, 0.272102633732726},
    {0.8862, 0.273867793345498},
    {0.9079, 0.275318321415127},
    {0.9296, 0.276463055436915},
    {0.9513, 0.277302028131565},
    {0.973, 0.277835265984609},
    {1, 0.278071905112638},
}};

}  // namespace coordination::test
